from fractions import Fraction

import pytest

import sqcert


def test_classify_examples():
    assert sqcert.classify(7) == "not representable: 4^0*(8*0+7)"
    assert sqcert.classify(13) == "two squares only: 2^2+3^2"
    assert sqcert.classify(16) == "pure square only: 4^2"
    assert sqcert.classify(17) == "nonvanishing representable: (2,2,3)"


def test_representations():
    assert sqcert.representations(50, nonvanishing=True) == [(3, 4, 5)]
    assert (0, 0, 4) in sqcert.representations(16)


def test_hurwitz():
    assert sqcert.verify_hurwitz(100) == [1, 4, 16, 25, 64, 100]
    assert sqcert.verify_hurwitz(10000) == sqcert.hurwitz_exceptions(10000)


def test_bootstrap_table():
    vals = sqcert.values(sqcert.verify(15))
    for n in list(range(1, 16)) + [25]:
        assert vals[n] == Fraction(n)


def test_verify_then_check():
    result = sqcert.verify(500)
    assert sqcert.check(result["certificate"])["valid"]
    assert sum(result["branches"].values()) == 500 - 15


def test_tampered_certificate_rejected():
    text = sqcert.verify(100)["certificate"]
    bad = text.replace('"value":"50/1"', '"value":"49/1"', 1)
    assert bad != text
    report = sqcert.check(bad)
    assert not report["valid"]
    assert report["failing_step"] is not None


def test_search_forces_identity():
    report = sqcert.search(60, 20)
    assert report["identity"]
    assert report["unforced"] == []


def test_cli_usage_error():
    code, _, err = sqcert.run(["search", "--horizon", "10", "--report", "20"])
    assert code == 2
    assert err


@pytest.mark.parametrize("n", [0])
def test_zero_rejected(n):
    with pytest.raises(Exception):
        sqcert.classify(n)
