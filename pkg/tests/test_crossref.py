import pytest

from uppslag.corpus import EditionId
from uppslag.crossref import annotate_crossrefs, detect_crossref, resolve_crossref
from uppslag.segmenter import Entry, Strategy


def entry(headword, text, ordinal=1, edition=EditionId.SECOND):
    return Entry(
        entry_id=f"{edition.value}:{ordinal:05d}",
        edition_id=edition,
        volume_id="01",
        page_id="0001",
        ordinal=ordinal,
        headword=headword,
        text=text,
        strategy=Strategy.BOLD,
    )


class TestDetect:
    def test_paper_example(self):
        assert detect_crossref(entry("Nervtumör", "Nervtumör. Se Nervsjukdomar.")) == "Nervsjukdomar"

    def test_alternate_spelling_example(self):
        assert detect_crossref(entry("Bajesid", "Bajesid, turkiska sultaner. Se Bajasid.")) == "Bajasid"

    def test_long_text_never_fires(self):
        long_text = "Orten omtalas i handlingarna. Se vidare " + "x" * 80
        assert len(long_text) >= 60
        assert detect_crossref(entry("Orten", long_text)) is None

    def test_length_boundary_is_exclusive(self):
        text59 = ("Kort. Se Målet." + " f" * 30)[:59]
        assert len(text59) == 59
        assert detect_crossref(entry("Kort", text59)) == "Målet"

    def test_marker_requires_following_space_and_word(self):
        assert detect_crossref(entry("Sedan", "Han kom strax. Sedan gick han.")) is None

    def test_skips_false_marker_then_finds_real_one(self):
        assert detect_crossref(entry("X", "Om Senaten. Se Senat.")) == "Senat"

    def test_hyphenated_target(self):
        assert detect_crossref(entry("X", "X. Se Nattochdag-ätten.")) == "Nattochdag-ätten"

    def test_multi_target_takes_first(self):
        assert detect_crossref(entry("X", "X. Se Ygg och Zygg.")) == "Ygg"

    def test_lowercase_se_not_matched(self):
        assert detect_crossref(entry("X", "X kallas också se not ofvan.")) is None


class TestResolve:
    def test_first_exact_match_wins_reproducing_error_mode(self):
        entries = [
            entry("Bajasid", "Bajasid, stad. Se Bajaset.", 1),
            entry("Bajaset", "Bajaset. stad i turkiska Armenien.", 2),
            entry("Bajesid", "Bajesid, turkiska sultaner. Se Bajasid.", 3),
        ]
        resolved = resolve_crossref("Bajasid", entries)
        assert resolved == entries[0].entry_id  # the city cross-reference, not a real article

    def test_missing_target(self):
        assert resolve_crossref("Saknas", [entry("Abo", "Abo. stad.")]) is None

    def test_unique_match(self):
        entries = [entry("Abo", "Abo. stad.", 1), entry("Bo", "Bo. by.", 2)]
        assert resolve_crossref("Bo", entries) == entries[1].entry_id


class TestAnnotate:
    def test_flags_and_table(self):
        entries = [
            entry("Nervsjukdomar", "Nervsjukdomar. sjukdomar i nervsystemet med många former.", 1),
            entry("Nervtumör", "Nervtumör. Se Nervsjukdomar.", 2),
        ]
        table = annotate_crossrefs(entries)
        assert entries[0].is_crossref is False
        assert entries[1].is_crossref is True
        assert entries[1].crossref_target == "Nervsjukdomar"
        assert len(table) == 1
        assert table[0].resolved_entry_id == entries[0].entry_id

    def test_detection_precision_on_mixed_list(self):
        crossrefs = [entry(f"Kors{i}", f"Kors{i}. Se Mål{i}.", i) for i in range(10)]
        regular = [
            entry(
                f"Ort{i}",
                f"Ort{i}, socken i län nummer {i} med kyrka, skola och marknadsplats vid ån. {i}00 inv.",
                100 + i,
            )
            for i in range(40)
        ]
        entries = crossrefs + regular
        annotate_crossrefs(entries)
        flagged = {e.headword for e in entries if e.is_crossref}
        assert flagged == {f"Kors{i}" for i in range(10)}
