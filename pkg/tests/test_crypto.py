import logging

import pytest
from hypothesis import given, settings, strategies as st

from osborn import crypto
from osborn.crypto import (BadSplit, BrokenChain, ChainConfig, Codec, SampleNotInCF,
                           UnknownElement, UnknownLetter, cf_cip, cf_dlip, cf_group_axioms,
                           cf_membership, cf_osi011, chain_transmit, cipher_table, decipher,
                           decipher_elements, default_codec, encipher, format_cipher_table,
                           is_CI, membership_equivalences, render, split, split_many)
from osborn.enumerate import enumerated
from osborn.isotopy import check_OSI, is_universal_osborn
from osborn.mappings import MappingWord, inner_R, inner_T, parse_word
from osborn.properties import local_sets


@pytest.fixture(scope="module")
def codec():
    return default_codec()


class TestFunctionals:
    def test_dlip_word(self, K):
        F = cf_dlip(K, 16)
        assert F.word == parse_word("L:16,L:10,R:10,R:16") and F.degree == 4

    def test_degrees(self, K):
        assert (cf_cip(K, 3).degree, cf_dlip(K, 3).degree, cf_osi011(K, 3).degree) == (2, 4, 6)

    def test_osi011_at_7(self, K):
        assert cf_osi011(K, 16).word.evaluate(K, 7) == 7

    def test_cip_abelian(self, named):
        z6 = named["z6"]
        assert all(is_CI(z6, cf_cip(z6, x)).holds for x in z6.elements)

    def test_empty_word_is_ci(self, K):
        assert is_CI(K, MappingWord()).holds

    def test_dlip_every_key(self, K):
        for x in K.elements:
            r = is_CI(K, cf_dlip(K, x))
            assert r.holds and str(x) in r.note
            assert is_CI(K, cf_osi011(K, x)).holds

    def test_dlip_fails_on_some_order5_loop(self):
        hits = [L for L in enumerated(5) if not check_OSI(L, "DLIP").holds]
        assert hits
        L = hits[0]
        bad = [x for x in L.elements if not is_CI(L, cf_dlip(L, x)).holds]
        assert bad
        r = is_CI(L, cf_dlip(L, bad[0]))
        y = r.witness[0]
        assert cf_dlip(L, bad[0]).word.evaluate(L, y) != y

    def test_unknown_functional(self, K):
        with pytest.raises(KeyError):
            crypto.functional(K, "nope", 1)


class TestMembership:
    def test_identity_word(self, K):
        assert all(cf_membership(K, MappingWord(), x) for x in K.elements)

    def test_inner_T_and_commutant(self, K):
        for a in K.elements:
            C = local_sets(K, a, a).commutant
            for z in K.elements:
                assert cf_membership(K, inner_T(K, a), z) == (z in C)

    def test_inner_R_and_left_local_nucleus(self, K):
        for a, b in [(3, 9), (16, 7), (12, 13)]:
            N = local_sets(K, a, b).n_lambda
            for z in K.elements:
                assert cf_membership(K, inner_R(K, a, b), z) == (z in N)

    def test_all_equivalences_kinyon(self, K):
        assert membership_equivalences(K).holds

    def test_all_equivalences_small(self, small_loops):
        for L in small_loops:
            assert membership_equivalences(L).holds


class TestGroupAxioms:
    def test_identity_sample(self, K):
        assert cf_group_axioms(K, 5, [MappingWord()]).holds

    def test_inner_T_sample_at_9(self, K):
        sample = [inner_T(K, a) for a in K.elements if cf_membership(K, inner_T(K, a), 9)]
        sample += [w.inverse() for w in sample]
        rep = cf_group_axioms(K, 9, sample)
        assert rep.holds and rep.sample_size == len(sample)

    def test_every_key_with_inner_mappings(self, K):
        for x in K.elements:
            sample = [w for a in K.elements for b in K.elements
                      for w in (inner_R(K, a, b),) if cf_membership(K, w, x)][:40]
            sample += [w.inverse() for w in sample]
            assert cf_group_axioms(K, x, sample).holds

    def test_e_sample_fixes_e(self, K):
        sample = [inner_R(K, a, b) for a in (2, 9) for b in (5, 16)]
        assert all(cf_membership(K, w, 1) for w in sample)
        assert cf_group_axioms(K, 1, sample).holds

    def test_rejects_outsider(self, K):
        with pytest.raises(SampleNotInCF):
            cf_group_axioms(K, 9, [parse_word("L:2")])


class TestSplit:
    def test_dlip_split(self, K):
        sfc, rfc = split(cf_dlip(K, 16), 2)
        assert sfc == parse_word("L:16,L:10") and rfc == parse_word("R:10,R:16")

    def test_osi011_split(self, K):
        sfc, rfc = split(cf_osi011(K, 16), 3)
        assert sfc == parse_word("R:16,Li:16,Ri:16") and rfc == parse_word("R:10,R:16,L:16")

    @pytest.mark.parametrize("k", [0, 4, -1])
    def test_bad_split(self, K, k):
        with pytest.raises(BadSplit):
            split(cf_dlip(K, 16), k)

    def test_split_many(self, K):
        parts = split_many(cf_dlip(K, 16).word, [1, 2, 3])
        assert [len(p) for p in parts] == [1, 1, 1, 1]
        with pytest.raises(BadSplit):
            split_many(cf_dlip(K, 16).word, [2, 2])

    def test_two_part_property(self, K):
        # for F = (F1, F2) fixing x: F1 fixes x iff F2 does
        for F in (cf_dlip, cf_osi011):
            for x in K.elements:
                w = F(K, x).word
                for k in range(1, len(w)):
                    a, b = split(w, k)
                    for y in K.elements:
                        assert cf_membership(K, a, y) == cf_membership(K, b, y)

    def test_last_part_property(self, K):
        for F in (cf_dlip, cf_osi011):
            for x in K.elements:
                parts = split_many(F(K, x).word, list(range(1, len(F(K, x).word))))
                for y in K.elements:
                    if all(cf_membership(K, p, y) for p in parts[:-1]):
                        assert cf_membership(K, parts[-1], y)


class TestEnciphering:
    def test_osborn_message(self, K, codec):
        sfc, rfc = split(cf_dlip(K, 16), 2)
        c = encipher(K, codec, sfc, "OSBORN")
        assert c == [9, 16, 7, 9, 10, 12]
        assert decipher_elements(K, rfc, c) == [11, 13, 7, 11, 12, 9]
        assert decipher(K, codec, rfc, c) == "OSBORN"

    def test_cipher_table_rows(self, K, codec):
        sfc, rfc = split(cf_dlip(K, 16), 2)
        text = format_cipher_table(cipher_table(K, codec, sfc, rfc))
        assert text.splitlines()[1:] == [
            "B\t10(16·7)=7\t(7·10)16=7\t7",
            "N\t10(16·9)=12\t(12·10)16=9\t9",
            "O\t10(16·11)=9\t(9·10)16=11\t11",
            "R\t10(16·12)=10\t(10·10)16=12\t12",
            "S\t10(16·13)=16\t(16·10)16=13\t13",
        ]

    def test_render(self):
        assert render(parse_word("L:16,L:10"), 7) == "10(16·7)"
        assert render(parse_word("R:10,R:16"), 7) == "(7·10)16"

    def test_empty(self, K, codec):
        assert encipher(K, codec, parse_word("L:16"), "") == []

    def test_errors(self, K, codec):
        with pytest.raises(UnknownLetter):
            encipher(K, codec, parse_word("L:16"), "OSBORNE")
        with pytest.raises(UnknownElement):
            decipher(K, codec, parse_word("L:16"), [2])
        with pytest.raises(UnknownElement):
            decipher_elements(K, parse_word("L:16"), [17])

    def test_key_clash_flagged(self, K, caplog):
        codec = Codec({"A": 16, "B": 7})
        with caplog.at_level(logging.WARNING, logger="osborn.crypto"):
            encipher(K, codec, split(cf_dlip(K, 16), 2)[0], "AB")
        assert "16" in caplog.text

    def test_codec_file(self, tmp_path, codec):
        p = tmp_path / "c.map"
        p.write_text(codec.format())
        assert Codec.load(p).encode_map == codec.encode_map
        with pytest.raises(ValueError):
            Codec({"A": 1, "B": 1})

    @settings(max_examples=40, deadline=None)
    @given(st.text(alphabet="BNORS", max_size=12), st.integers(1, 16),
           st.sampled_from([("dlip", 2), ("dlip", 1), ("dlip", 3), ("osi011", 3), ("osi011", 5)]))
    def test_round_trip(self, K, text, key, choice):
        name, k = choice
        codec = default_codec()
        sfc, rfc = split(crypto.functional(K, name, key), k)
        assert decipher(K, codec, rfc, encipher(K, codec, sfc, text)) == text

    def test_round_trip_universal_corpus(self, named, codec):
        small = Codec({"a": 1, "b": 2})
        for name, L in named.items():
            if L.order < 2 or not is_universal_osborn(L).holds:
                continue
            c = codec if L.order >= 13 else small
            msg = "".join(c.letters()) * 2
            for x in L.elements:
                for F in (cf_dlip, cf_osi011):
                    sfc, rfc = split(F(L, x), 2)
                    assert decipher(L, c, rfc, encipher(L, c, sfc, msg)) == msg


class TestChain:
    def test_two_terminals(self, K, codec):
        t = chain_transmit(K, ChainConfig.parse("L:16,L:10|R:10,R:16"), codec, "OSBORN")
        assert t.hops[0] == [9, 16, 7, 9, 10, 12]
        assert t.hops[-1] == t.elements == [11, 13, 7, 11, 12, 9]

    def test_four_terminals(self, K, codec):
        t = chain_transmit(K, ChainConfig.parse("L:16|L:10|R:10|R:16"), codec, "OSBORN")
        assert len(t.hops) == 4 and t.hops[-1] == t.elements
        assert all(t.exposed[-1])
        # B is fixed by L_16 L_10 already
        assert t.exposed[1][2] and not t.exposed[0][2]

    def test_identity_components_all_exposed(self, K, codec):
        t = chain_transmit(K, ChainConfig.parse("|"), codec, "BONS")
        assert all(all(row) for row in t.exposed)

    def test_broken(self, K, codec):
        with pytest.raises(BrokenChain):
            chain_transmit(K, ChainConfig.parse("L:16|L:10"), codec, "OSBORN")

    def test_table_marks_exposure(self, K, codec):
        t = chain_transmit(K, ChainConfig.parse("L:16|L:10|R:10|R:16"), codec, "OSBORN")
        lines = t.table().splitlines()
        assert lines[0].split("\t") == ["hop", "component", *"OSBORN"]
        assert lines[-1].endswith("11*\t13*\t7*\t11*\t12*\t9*")
