import json

import pytest

from braidlab.adjacency import (
    HASH_ALG,
    AdjacencyCertificate,
    adj_grid,
    adj_index3,
    adj_index4,
    adj_square,
    adj_staircase,
    certificate_from_json,
    load_certificate,
    save_certificate,
    verify,
    word_hash,
)
from braidlab.braid import BraidWord, DeleteGenerator, torus_braid
from braidlab.errors import BoundViolated, ParseError


def beta_len(m):
    """Length of the residue word left after fully reducing a half twist."""
    total = 0
    while m >= 3:
        total += 2 * (m - 2)
        m -= 3
    return total + (1 if m == 2 else 0)


def test_word_hash_is_stable():
    h = word_hash(3, [1, 2, 1])
    assert h == word_hash(3, (1, 2, 1))
    assert h != word_hash(4, [1, 2, 1])
    assert h != word_hash(3, [1, 2])
    assert len(h) == 64 and int(h, 16) >= 0
    assert HASH_ALG == "sha256-int32le-v1"


def test_word_hash_golden():
    import hashlib
    import struct
    letters = [1, -2, 1]
    want = hashlib.sha256(struct.pack("<4i", 3, *letters)).hexdigest()
    assert word_hash(3, letters) == want


# -- constructions -----------------------------------------------------------


def test_index3_pinned_final_words():
    finals = {
        3: [1, 2, 1, 1, 1],
        4: [1, 1, 2, 1, 1, 1, 1],
        5: [1, 1, 1, 2, 1, 1, 1, 1, 1],
    }
    for m, letters in finals.items():
        cert = adj_index3(m)
        assert list(cert.final_word().letters) == letters, m
        assert verify(cert).ok


def test_index3_achieved_n():
    for m in range(2, 31):
        cert = adj_index3(m)
        l, r = divmod(m, 3)
        n = {0: 5 * l - 1, 1: 5 * l + 1, 2: 5 * l + 3}[r]
        assert cert.metadata["achieved_n"] == n, m
        assert cert.source.q == n
        assert cert.target == cert.target.__class__(3, m)
        assert verify(cert).ok, m


def test_index4_achieved_n():
    for m in range(2, 31):
        cert = adj_index4(m)
        n = (5 * m - 3) // 2
        assert cert.metadata["achieved_n"] == n, m
        assert verify(cert).ok, m


def test_index4_small_cases():
    # m = 2 gives the trefoil, m = 3 a two component link
    assert adj_index4(2).source.q == 3
    assert adj_index4(3).source.q == 6
    assert adj_index4(3).source.components == 2


def test_square_achieved_n_closed_form():
    for m in range(2, 21):
        cert = adj_square(m)
        l, r = divmod(m, 3)
        want = {0: 6 * l * l - 3 * l + 1,
                1: 6 * l * l + l + 1,
                2: 6 * l * l + 5 * l + 2}[r]
        assert cert.metadata["achieved_n"] == want, m
        assert verify(cert).ok, m


def test_square_n_is_max_integer_with_growth_property():
    # achieved n stays within a constant of the quadratic growth target
    for m in range(2, 31):
        n = adj_square(m).metadata["achieved_n"]
        assert n >= (2 * m * m + 4) / 3 - m - 1, m


def test_beta_word_lengths():
    assert beta_len(1) == 0
    assert beta_len(2) == 1
    assert beta_len(3) == 2
    assert beta_len(5) == 7
    assert beta_len(7) == 14
    for l in range(1, 14):
        assert beta_len(3 * l) == (3 * l - 1) * l
        assert beta_len(3 * l + 1) == 3 * l * l + l
        assert beta_len(3 * l + 2) == (3 * l + 3) * l + 1


def test_beta_recursion():
    for m in range(3, 41):
        assert beta_len(m) == 2 * (m - 2) + beta_len(m - 3)


def test_square_n_matches_beta_lengths():
    for m in range(2, 21):
        n = adj_square(m).metadata["achieved_n"]
        assert n == (m - 1) + beta_len(m - 2) + beta_len(m)


def test_staircase():
    for m in range(2, 11):
        cert = adj_staircase(m)
        assert cert.target.p == m and cert.target.q == m + 1
        assert cert.source.p == 2
        assert verify(cert).ok, m
        assert cert.metadata["conjectured_n"] == (2 * m * m - m + 5) // 3
    # the m = 2 certificate is trivial: T(2,3) is already a 2-braid closure
    trivial = adj_staircase(2)
    assert len(trivial.steps) == 0
    assert trivial.metadata["achieved_n"] == 3


def test_grid_basic():
    cert = adj_grid(4, 5, 7, 7)
    assert verify(cert).ok
    assert cert.deletions() == 24
    assert cert.source == cert.source.__class__(4, 5)
    assert cert.target == cert.target.__class__(7, 7)


def test_grid_deletion_count_is_chi_difference():
    for (n, m, a, b) in [(2, 3, 4, 5), (1, 1, 3, 3), (3, 4, 5, 6),
                         (2, 2, 6, 7), (5, 5, 6, 6)]:
        cert = adj_grid(n, m, a, b)
        assert verify(cert).ok, (n, m, a, b)
        chi_src = cert.source.chi
        chi_tgt = cert.target.chi
        assert cert.deletions() == chi_src - chi_tgt, (n, m, a, b)


def test_grid_identity():
    cert = adj_grid(3, 5, 3, 5)
    assert len(cert.steps) == 0
    assert cert.deletions() == 0
    assert verify(cert).ok


def test_grid_torus2_edge():
    cert = adj_grid(2, 3, 2, 5)
    assert verify(cert).ok
    assert cert.deletions() == 2


def test_grid_single_strand_source():
    # T(1, m) is an unknot; certificate must still verify
    cert = adj_grid(1, 2, 3, 4)
    assert verify(cert).ok


def test_grid_bound_checks():
    with pytest.raises(BoundViolated):
        adj_grid(5, 5, 4, 5)
    with pytest.raises(BoundViolated):
        adj_grid(2, 6, 3, 5)
    with pytest.raises(BoundViolated):
        adj_grid(0, 1, 2, 3)


def test_construction_parameter_validation():
    for maker in (adj_index3, adj_index4, adj_square, adj_staircase):
        with pytest.raises(BoundViolated):
            maker(1)


# -- verification ------------------------------------------------------------


def test_verify_detects_tampered_hash():
    cert = adj_index3(5)
    data = cert.to_json_dict()
    data["steps"][2]["hash"] = "0" * 64
    verdict = verify(certificate_from_json(data))
    assert not verdict
    v = verdict.to_json_dict()
    assert v["status"] == "invalid_step"
    assert v["step_index"] == 2


def test_verify_detects_illegal_move():
    cert = adj_index3(5)
    data = cert.to_json_dict()
    data["steps"][0]["move"] = {"kind": "delete", "pos": 999}
    verdict = verify(certificate_from_json(data))
    assert verdict.to_json_dict()["status"] == "invalid_step"


def test_verify_detects_wrong_source_claim():
    cert = adj_index3(5)
    data = cert.to_json_dict()
    data["source"] = {"p": 2, "q": 10}
    verdict = verify(certificate_from_json(data))
    v = verdict.to_json_dict()
    assert v["status"] == "endpoint_mismatch"
    assert v["which"] == "source"


def test_verify_detects_wrong_target_claim():
    cert = adj_square(4)
    data = cert.to_json_dict()
    data["target"] = {"p": 4, "q": 7}
    verdict = verify(certificate_from_json(data))
    v = verdict.to_json_dict()
    assert v["status"] == "endpoint_mismatch"
    assert v["which"] == "target"


def test_verify_detects_dropped_deletion():
    cert = adj_index3(6)
    data = cert.to_json_dict()
    kept = [s for s in data["steps"] if s["move"]["kind"] != "delete"]
    dropped = len(data["steps"]) - len(kept)
    assert dropped > 0
    data["steps"] = kept
    verdict = verify(certificate_from_json(data))
    assert not verdict


def test_verdict_describe_mentions_position():
    cert = adj_index3(5)
    data = cert.to_json_dict()
    data["steps"][1]["hash"] = "f" * 64
    verdict = verify(certificate_from_json(data))
    assert "1" in verdict.describe()


# -- serialization -----------------------------------------------------------


def test_certificate_json_round_trip(tmp_path):
    cert = adj_square(5)
    path = tmp_path / "cert.json"
    save_certificate(cert, path)
    loaded = load_certificate(path)
    assert loaded.to_json_dict() == cert.to_json_dict()
    assert verify(loaded).ok


def test_certificate_schema_fields():
    data = adj_index4(4).to_json_dict()
    assert data["version"] == 1
    assert data["hash_alg"] == HASH_ALG
    assert set(data) >= {"version", "hash_alg", "strands", "source",
                         "target", "initial_word", "steps", "metadata"}
    assert data["source"] == {"p": 2, "q": (5 * 4 - 3) // 2}
    assert data["metadata"]["construction"] == "index4"
    assert data["metadata"]["params"] == {"m": 4}
    for step in data["steps"]:
        assert set(step) == {"move", "hash"}


def test_certificate_rejects_bad_documents():
    good = adj_index3(3).to_json_dict()
    for mutate in (
        lambda d: d.update(version=2),
        lambda d: d.update(hash_alg="md5"),
        lambda d: d.update(strands=9),
        lambda d: d.pop("initial_word"),
        lambda d: d["steps"].append({"move": {"kind": "nope"}, "hash": ""}),
    ):
        data = json.loads(json.dumps(good))
        mutate(data)
        with pytest.raises(ParseError):
            certificate_from_json(data)


def test_load_certificate_rejects_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_certificate(path)


def test_final_word_replays_all_steps():
    cert = adj_square(4)
    final = cert.final_word()
    assert len(final) == len(cert.initial_word) - cert.deletions()
    assert word_hash(cert.strands, final.letters) == cert.steps[-1].hash


def test_certificates_preserve_exponent_sum_between_deletions():
    cert = adj_index3(7)
    word = list(cert.initial_word.letters)
    from braidlab.braid import _apply_inplace
    prev = sum(1 if e > 0 else -1 for e in word)
    for step in cert.steps:
        _apply_inplace(cert.strands, word, step.move)
        cur = sum(1 if e > 0 else -1 for e in word)
        if isinstance(step.move, DeleteGenerator):
            assert cur == prev - 1
        else:
            assert cur == prev
        prev = cur
