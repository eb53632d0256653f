import pytest

from helpers import braid_closure

from stickcert.diagram import (
    Crossing,
    Diagram,
    DiagramError,
    arc_descriptors,
    change_crossings,
    faces,
    fingerprint,
    gauss_code,
    mirror,
    parse_pd,
    simplify,
    validate,
    wirtinger,
    write_pd,
)


class TestValidate:
    def test_unknot_ok(self):
        assert validate(Diagram(())) is None

    def test_trefoil_ok(self, trefoil):
        assert validate(trefoil) is None

    def test_label_used_three_times(self, trefoil):
        bad = list(trefoil.crossings)
        slots = list(bad[0].slots)
        slots[1] = slots[0]
        bad[0] = Crossing(bad[0].id, tuple(slots), bad[0].sign)
        assert validate(Diagram(tuple(bad))) is not None

    def test_bad_under_out(self):
        bad = Diagram((Crossing(1, (1, 2, 1, 2), 1),))
        assert validate(bad) is not None


class TestGaussCode:
    def test_unknot_empty(self):
        assert gauss_code(Diagram(())) == ()

    def test_trefoil_sequence(self, trefoil):
        code = gauss_code(trefoil)
        kinds = [(cid, kind) for cid, kind, _ in code]
        assert kinds == [(1, "O"), (2, "U"), (3, "O"), (1, "U"), (2, "O"), (3, "U")]
        assert len({sign for _, _, sign in code}) == 1

    def test_mirror_flips_signs(self, figure_eight):
        orig = gauss_code(figure_eight)
        mirr = gauss_code(mirror(figure_eight))
        assert [(c, k) for c, k, _ in orig] == [(c, k) for c, k, _ in mirr]
        assert [-s for _, _, s in orig] == [s for _, _, s in mirr]


class TestWirtinger:
    def test_unknot(self):
        pres = wirtinger(Diagram(()))
        assert pres.n_arcs == 1
        assert pres.relations == ()

    def test_trefoil_counts(self, trefoil):
        pres = wirtinger(trefoil)
        assert pres.n_arcs == 3
        assert pres.n_relations == 3

    def test_arc_and_relation_counts_match_crossings(self, figure_eight):
        pres = wirtinger(figure_eight)
        assert pres.n_arcs == figure_eight.n_crossings
        assert pres.n_relations == figure_eight.n_crossings

    def test_every_arc_in_some_relation(self, figure_eight):
        pres = wirtinger(figure_eight)
        used = set()
        for rel in pres.relations:
            used.update((rel.in_arc, rel.over_arc, rel.out_arc))
        assert used == set(range(pres.n_arcs))

    def test_descriptors_consistent(self, trefoil):
        descs = arc_descriptors(trefoil)
        assert len(descs) == 3
        for desc in descs:
            assert desc[0] < 0 and desc[-1] < 0
            assert all(c > 0 for c in desc[1:-1])


class TestChangeCrossings:
    def test_empty_change_identity(self, trefoil):
        assert change_crossings(trefoil, []) == trefoil

    def test_involution(self, figure_eight):
        once = change_crossings(figure_eight, [2, 3])
        assert change_crossings(once, [2, 3]) == figure_eight

    def test_changed_diagram_valid(self, figure_eight):
        for cid in (1, 2, 3, 4):
            assert validate(change_crossings(figure_eight, [cid])) is None

    def test_unknown_id(self, trefoil):
        with pytest.raises(DiagramError, match="unknown"):
            change_crossings(trefoil, [9])

    def test_sign_flips(self, trefoil):
        changed = change_crossings(trefoil, [1])
        assert changed.crossing_by_id(1).sign == -trefoil.crossing_by_id(1).sign

    def test_unknotting_the_trefoil(self, trefoil):
        # changing one crossing of the trefoil gives a 3-crossing unknot
        assert simplify(change_crossings(trefoil, [1])).n_crossings == 0


class TestMirror:
    def test_unknot(self):
        assert mirror(Diagram(())) == Diagram(())

    def test_involution(self, figure_eight):
        assert mirror(mirror(figure_eight)) == figure_eight

    def test_valid(self, trefoil):
        assert validate(mirror(trefoil)) is None


class TestSimplify:
    def test_kink_removed(self):
        # trefoil braid plus a lone extra strand crossing = one RI kink
        kinked = braid_closure([1, 1, 1, 2], 3)
        assert kinked.n_crossings == 4
        assert simplify(kinked).n_crossings == 3

    def test_rii_pair_removed(self):
        padded = braid_closure([1, 1, 1, 1, -1], 2)
        assert padded.n_crossings == 5
        assert simplify(padded).n_crossings == 3

    def test_two_opposite_kinks(self):
        assert simplify(braid_closure([1, -2], 3)).n_crossings == 0

    def test_trefoil_already_minimal(self, trefoil):
        assert simplify(trefoil) == trefoil

    def test_count_non_increasing(self, figure_eight):
        assert simplify(figure_eight).n_crossings <= figure_eight.n_crossings


class TestFaces:
    def test_euler_formula(self, trefoil, figure_eight):
        for dg in (trefoil, figure_eight):
            c = dg.n_crossings
            assert len(faces(dg)) == c + 2  # V - E + F = 2 with E = 2V

    def test_half_edges_partitioned(self, figure_eight):
        fs = faces(figure_eight)
        all_h = [h for f in fs for h in f]
        assert len(all_h) == len(set(all_h)) == 4 * figure_eight.n_crossings


class TestPdText:
    def test_round_trip(self, trefoil, figure_eight):
        for dg in (trefoil, figure_eight):
            assert parse_pd(write_pd(dg)) == dg

    def test_comments_and_blanks(self, trefoil):
        text = "# a trefoil\n\n" + write_pd(trefoil) + "\n# end\n"
        assert parse_pd(text) == trefoil

    def test_malformed_line(self):
        with pytest.raises(DiagramError, match="line 1"):
            parse_pd("X 1,2,3\n")

    def test_unknot_empty_text(self):
        assert parse_pd("") == Diagram(())
        assert write_pd(Diagram(())) == ""

    def test_fingerprint_stable(self, trefoil):
        assert fingerprint(trefoil) == fingerprint(parse_pd(write_pd(trefoil)))
        assert fingerprint(trefoil) != fingerprint(mirror(trefoil))
