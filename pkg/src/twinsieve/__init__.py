"""twinsieve: segmented sieves, coprime residue counts, exact ratio tables and
mechanical checks of prime / twin-prime counting inequalities."""

from twinsieve.primes import CapacityError, PrimeTable, TwinPair, is_prime_trial, sieve_range

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "PrimeTable",
    "TwinPair",
    "is_prime_trial",
    "sieve_range",
    "__version__",
]
