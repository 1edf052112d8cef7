"""Deterministic elliptic-curve primality proving for special sequences.

Two instantiations of one CM framework:

* ``test15`` decides F_k = 1 - 4(alpha^k + conj(alpha)^k) + 4^(k+2)
  (alpha = (1 + sqrt(-15))/2) for indices k in the residue set S, and on a
  prime verdict emits a replayable point certificate.
* ``test2`` decides 1 + 9*2^k for k = 1 mod 8, k >= 17.

Both run in quasi-quadratic time in the bit length of the tested number.
"""

from .prover15 import (Certificate, CertificateCheck, Outcome, Reason,
                       Verdict, strict_torsion_check, test15,
                       verify_certificate)
from .prover2 import f2_value, test2
from .sequence import FkValue, fk_exact, fk_mod_stream, fk_sequence, in_set
from .sieve import SieveReport, primes_up_to, sieve_candidates

__version__ = "0.1.0"

__all__ = [
    "Certificate", "CertificateCheck", "FkValue", "Outcome", "Reason",
    "SieveReport", "Verdict", "f2_value", "fk_exact", "fk_mod_stream",
    "fk_sequence", "in_set", "primes_up_to", "sieve_candidates",
    "strict_torsion_check", "test15", "test2", "verify_certificate",
    "__version__",
]
