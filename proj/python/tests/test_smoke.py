import itertools
import math

import pytest

import plexforge as pf


def brute_transversals(square):
    n = square.order
    return sum(
        len({square.at(r, p[r]) for r in range(n)}) == n for p in itertools.permutations(range(n))
    )


def test_cyclic_square_and_text_round_trip():
    b3 = pf.build_cyclic(3)
    assert b3.rows() == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    assert b3.to_text() == "3\n0 1 2\n1 2 0\n2 0 1\n"
    assert pf.LatinSquare.parse(b3.to_text()) == b3
    assert len(b3.digest()) == 64


def test_invalid_square_raises_with_code():
    with pytest.raises(pf.PlexforgeError) as info:
        pf.LatinSquare([[0, 0], [1, 1]])
    assert info.value.code == "RowNotPermutation"


def test_transversal_counts_match_brute_force():
    assert pf.count_plexes(pf.build_cyclic(5))["count"] == 15
    assert pf.find_plex(pf.build_cyclic(6))["status"] == "ExhaustedNone"
    for seed in range(1, 6):
        sq = pf.random_square(6, seed)
        assert pf.count_plexes(sq)["count"] == brute_transversals(sq)


def test_constructed_triplex_and_search_witness():
    sq = pf.build_square("mod4", n=8)
    plex = pf.build_plex("mod4", n=8)
    assert len(plex) == 24
    assert pf.is_plex(sq, plex, 3)
    out = pf.find_plex(sq, 3)
    assert out["status"] == "Found"
    assert pf.is_plex(sq, out["witness"], 3)
    assert pf.find_plex(sq, 1)["status"] == "ExhaustedNone"


def test_certificate_round_trip():
    sq = pf.build_square("kk2", k=3, m=2)
    cert = pf.certify(sq, k=1)
    assert cert["conclusion"] == "Excluded"
    assert cert["required_value"] == 6 and cert["required_modulus"] == 12
    assert pf.verify(cert, sq)
    assert not pf.verify(cert, pf.build_cyclic(10))
    assert pf.certify(sq, k=3)["conclusion"] == "Inconclusive"


def test_completions_and_species():
    rows = pf.build_cyclic(8).rows()[:5]
    squares = pf.enumerate_completions(rows)
    assert len(squares) == 264
    classes = pf.classify(squares)
    assert len(classes) == 9
    assert sum(c["class_size"] for c in classes) == 264
    assert all(c["transversal_count"] == 0 for c in classes)


def test_species_key_invariance():
    sq = pf.random_square(6, 3)
    key = pf.canonical_key(sq)
    for conj in pf.conjugates(sq):
        assert pf.canonical_key(conj) == key
    moved = pf.relabel(sq, [5, 4, 3, 2, 1, 0], [1, 0, 2, 3, 4, 5], [2, 0, 1, 3, 5, 4])
    assert pf.canonical_key(moved) == key


def test_bounds():
    ext = pf.log_bound("extension", n=8, k=5)
    assert ext["numerator"] == "205069795875"
    expect = 3 * math.log10(math.factorial(8)) + 8 * math.log10(6) - 24 * math.log10(8)
    assert abs(ext["log10"] - expect) < 1e-9
    step = pf.log_bound("stepcount", a=1, m=1)
    assert abs(step["log10"] - 4 * math.log10(math.exp(-2))) < 1e-9


def test_delta_and_order6_example():
    assert pf.delta((5, 1, 0), 8, 1) == 2
    sq = pf.find_order6_example()
    assert brute_transversals(sq) == 0
    assert pf.find_plex(sq, 3)["status"] == "Found"


def test_quick_acceptance_criterion():
    assert pf.run_criterion(2)["passed"]
