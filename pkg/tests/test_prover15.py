import json
import random

import pytest

from cmprime import prover15
from cmprime.ecring import RingPoint, double, is_on_curve
from cmprime.modarith import Modulus
from cmprime.oracles import MRResult, miller_rabin
from cmprime.prover15 import (CERT_FORMAT, Certificate, CertificateFormatError,
                              Outcome, Reason, strict_torsion_check,
                              verify_certificate)
from cmprime.sequence import fk_exact


def test_domain_error_outside_s():
    for k in (-1, 0, 5, 27, 240):
        v = prover15.test15(k)
        assert v.is_domain_error
        assert v.certificate is None


def test_k9_prime_with_certificate():
    v = prover15.test15(9)
    assert v.outcome is Outcome.PRIME
    assert v.F == 4191181
    c = v.certificate
    assert c.k == 9 and c.F == 4191181 and c.doublings == 19
    assert c.d * c.d % c.F == 5
    assert verify_certificate(c)
    assert strict_torsion_check(c)


def test_k123_prime_needs_conjugate_root():
    # the exponentiation in step 3 produces the square root of 5 that does
    # NOT reduce the Hilbert prime above F_123; the fallback root must win
    v = prover15.test15(123)
    assert v.is_prime
    assert "conjugate" in v.detail
    assert verify_certificate(v.certificate)
    assert strict_torsion_check(v.certificate)


def test_k19_composite_step1():
    v = prover15.test15(19)
    assert v.is_composite
    assert v.reason is Reason.STEP1_NONRESIDUE
    assert miller_rabin(fk_exact(19).F) is MRResult.COMPOSITE


def test_sweep_small_s_members():
    # every k in S below 123 other than 9 yields a composite F_k
    for k in (39, 45, 59, 63, 67, 85, 105):
        v = prover15.test15(k)
        assert v.is_composite, k
        assert v.reason in set(Reason), k
        if v.reason is Reason.FACTOR_FOUND and v.factor is not None:
            assert fk_exact(k).F % v.factor == 0


def test_intermediate_points_stay_on_curve():
    v = prover15.test15(9)
    c = v.certificate
    M = Modulus(c.F)
    curve = prover15.curve_for_d(M, c.d)
    P = prover15.base_point_for_d(M, c.d)
    rng = random.Random(9)
    sample = sorted(rng.sample(range(1, c.doublings + 1), 16))
    step = 0
    for target in sample:
        while step < target:
            P = double(P, curve)
            step += 1
        assert is_on_curve(P, curve), f"off-curve after {step} doublings"


def test_certificate_json_roundtrip():
    c = prover15.test15(9).certificate
    doc = c.to_json()
    assert json.loads(doc)["format"] == CERT_FORMAT
    assert Certificate.from_json(doc) == c
    # whitespace-insensitive, value-exact
    squeezed = json.dumps(json.loads(doc), separators=(",", ":"))
    assert Certificate.from_json(squeezed) == c


def test_certificate_json_rejects_malformed():
    c = prover15.test15(9).certificate
    doc = json.loads(c.to_json())
    bad = dict(doc)
    bad["k"] = str(doc["k"])  # numbers must be JSON numbers
    with pytest.raises(CertificateFormatError):
        Certificate.from_json(json.dumps(bad))
    bad = dict(doc)
    bad["F"] = doc["F"] + "x"  # big integers must be decimal strings
    with pytest.raises(CertificateFormatError):
        Certificate.from_json(json.dumps(bad))
    bad = dict(doc)
    del bad["final_z"]
    with pytest.raises(CertificateFormatError):
        Certificate.from_json(json.dumps(bad))
    bad = dict(doc)
    bad["format"] = "cm15-cert-v0"
    with pytest.raises(CertificateFormatError):
        Certificate.from_json(json.dumps(bad))
    with pytest.raises(CertificateFormatError):
        Certificate.from_json("not json at all")


def _mutate(cert: Certificate, **kw) -> Certificate:
    fields = {name: getattr(cert, name) for name in
              ("k", "F", "d", "a4", "a6", "Py", "doublings",
               "final_x", "final_z", "format")}
    fields.update(kw)
    return Certificate(**fields)


def test_verify_rejects_perturbations():
    c = prover15.test15(9).certificate
    chk = verify_certificate(_mutate(c, d=(c.d + 1) % c.F))
    assert not chk and "d-squared-not-5" in chk.failures
    chk = verify_certificate(_mutate(c, doublings=2 * c.k))
    assert not chk and "doubling-count" in chk.failures
    chk = verify_certificate(_mutate(c, final_x=(c.final_x + 1) % c.F))
    assert not chk and "final-point-mismatch" in chk.failures
    chk = verify_certificate(_mutate(c, F=c.F + 8))
    assert not chk and "F-mismatch" in chk.failures
    chk = verify_certificate(_mutate(c, k=19))
    assert not chk
    chk = verify_certificate(_mutate(c, Py=(c.Py + 1) % c.F))
    assert not chk and "Py-mismatch" in chk.failures
    chk = verify_certificate(_mutate(c, format="cm15-cert-v0"))
    assert not chk and "format-tag" in chk.failures


def test_half_chain_certificate_fails_final_y():
    # with doublings = 2k the replayed point is order 4, not 2-torsion
    c = prover15.test15(9).certificate
    chk = verify_certificate(_mutate(c, doublings=2 * c.k))
    assert "final-y-nonzero" in chk.failures or "doubling-count" in chk.failures


def test_strict_torsion_rejects_perturbed_final_x():
    c = prover15.test15(9).certificate
    # keep d etc. valid but move the final point off the predicted x
    M = Modulus(c.F)
    bad_x = int(M.reduce(c.final_x + c.final_z))
    assert not strict_torsion_check(_mutate(c, final_x=bad_x))


def test_predicted_torsion_forms():
    c = prover15.test15(9).certificate
    forms = prover15.predicted_torsion_x(c)
    assert set(forms) == {"k2+", "k2-", "h+", "h-"}
    M = Modulus(c.F)
    x_aff = int(M.reduce(c.final_x * M.inv(c.final_z)))
    assert x_aff in forms.values()


def test_base_point_on_curve_identity():
    # y0^2 = a6 must hold identically once d^2 = 5; exercised at two sizes
    for k in (9, 123):
        v = prover15.test15(k)
        c = v.certificate
        M = Modulus(c.F)
        curve = prover15.curve_for_d(M, c.d)
        assert is_on_curve(RingPoint(0, c.Py, 1), curve)


def test_prime_verdicts_match_oracle_prefix():
    for k, want_prime in ((9, True), (19, False), (39, False), (123, True)):
        assert prover15.test15(k).is_prime == want_prime
        mr = miller_rabin(fk_exact(k).F)
        assert (mr is MRResult.PROBABLE_PRIME) == want_prime
