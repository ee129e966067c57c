import pytest
from hypothesis import given
from hypothesis import strategies as st

import polycox as px
from polycox import serialize as ser
from polycox.paths import Path2, Step2

from conftest import MATRICES


class TestWordEncoding:
    def test_single_char_names_concatenate(self, b3plus):
        p, _ = b3plus
        assert ser.word_to_str(p, (0, 1, 2)) == "sta"
        assert ser.word_from_str(p, "sta") == (0, 1, 2)

    def test_dotted_accepted_for_single_char(self, b3plus):
        p, _ = b3plus
        assert ser.word_from_str(p, "s.t.a") == (0, 1, 2)

    def test_multi_char_names_use_dots(self, groups):
        gp = px.garside_presentation(groups("A2"))
        w = (0, 4, 2)
        s = ser.word_to_str(gp.pg, w)
        assert "." in s
        assert ser.word_from_str(gp.pg, s) == w

    def test_empty(self, b3plus):
        p, _ = b3plus
        assert ser.word_to_str(p, ()) == ""
        assert ser.word_from_str(p, "") == ()

    def test_unknown_generator(self, b3plus):
        p, _ = b3plus
        with pytest.raises(px.InputError):
            ser.word_from_str(p, "sxta")


class TestRoundTrips:
    def test_polygraph2(self, b3plus):
        p, _ = b3plus
        assert ser.polygraph2_from_dict(ser.polygraph2_to_dict(p)) == p

    def test_polygraph31_with_cells(self, b3plus_completed):
        p31, _ = b3plus_completed
        back = ser.polygraph31_from_dict(ser.polygraph31_to_dict(p31))
        assert back == p31

    def test_path(self, b3plus_completed):
        p31, _ = b3plus_completed
        path = p31.cells[3].tgt
        back = ser.path_from_dict(ser.path_to_dict(path), p31.base)
        assert back == path

    def test_matrix(self):
        m = MATRICES["B3"]
        assert ser.matrix_from_dict(ser.matrix_to_dict(m)) == m

    def test_part(self, b3plus_completed):
        from test_tietze import b3plus_part

        p31, _ = b3plus_completed
        part = b3plus_part(p31)
        back = ser.part_from_dict(ser.part_to_dict(part, p31), p31)
        assert back.two_cells[0].rule == part.two_cells[0].rule
        assert [t.cell for t in back.three_cells] == [t.cell for t in part.three_cells]
        assert [s.redundant for s in back.spheres] == [
            s.redundant for s in part.spheres
        ]
        # positional ranks refine the original order
        assert px.validate_collapsible(p31, back) == []

    @given(st.data())
    def test_generated_presentations_round_trip(self, data):
        n = data.draw(st.integers(1, 4))
        names = [f"g{i}" for i in range(n)]
        p = px.Polygraph2(names)
        n_rules = data.draw(st.integers(0, 4))
        for k in range(n_rules):
            lhs = tuple(
                data.draw(
                    st.lists(st.integers(0, n - 1), min_size=1, max_size=4)
                )
            )
            rhs = tuple(
                data.draw(st.lists(st.integers(0, n - 1), max_size=4))
            )
            p.add_rule(px.Rule(f"r{k}", lhs, rhs))
        assert ser.polygraph2_from_dict(ser.polygraph2_to_dict(p)) == p


class TestRendering:
    def test_whiskered_step(self, b3plus_completed):
        p31, _ = b3plus_completed
        # the D-cell target starts with delta whiskered by sa and a
        cell = {c.name: c for c in p31.cells}["c3"]
        text = ser.render_path(cell.tgt)
        assert text.startswith("sa·kb3 ")
        assert " ⋆ " in text

    def test_identity(self, b3plus):
        p, _ = b3plus
        assert ser.render_path(px.identity_path(p, (0, 1))) == "1_st"

    def test_reverse_marked(self, b3plus):
        p, _ = b3plus
        path = Path2(p, (2, 0), [Step2(1, -1, 0)])
        assert "beta-" in ser.render_path(path)


class TestGarsideDocuments:
    def test_completed_presentation_round_trip(self, groups):
        gc = px.complete_garside(groups("A2"))
        doc = ser.polygraph31_to_dict(gc.p31)
        back = ser.polygraph31_from_dict(doc)
        assert back == gc.p31

    def test_reduced_presentation_round_trip(self, groups):
        g3 = px.garside_coherent(groups("A1^3"))
        back = ser.polygraph31_from_dict(ser.polygraph31_to_dict(g3.p31))
        assert back == g3.p31
