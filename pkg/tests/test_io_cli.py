import io

import pytest

from catkit.cli import run
from catkit.errors import ComplexFileError
from catkit.generators import (
    gen_beaded_strip,
    gen_figure3,
    gen_standard,
    gen_surface,
)
from catkit.io import parse_complex, parse_link, serialize_complex, serialize_link
from catkit.cubelinks import SimplicialLink


def run_capture(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


def all_generator_outputs():
    yield gen_standard("disc_triangle")
    yield gen_standard("sphere_tetrahedron")
    yield gen_standard("flat_torus")
    yield gen_surface(2)
    yield gen_figure3()[0]
    yield gen_beaded_strip(2, 3.0, 0.5)[0]


class TestRoundTrip:
    @pytest.mark.parametrize("idx", range(6))
    def test_parse_serialize_identity(self, idx):
        obj = list(all_generator_outputs())[idx]
        text = serialize_complex(obj)
        back = parse_complex(text)
        assert back == obj

    @pytest.mark.parametrize("idx", range(6))
    def test_serialized_form_is_canonical(self, idx):
        obj = list(all_generator_outputs())[idx]
        text = serialize_complex(obj)
        assert serialize_complex(parse_complex(text)) == text

    def test_marks_round_trip(self):
        M, mg = gen_beaded_strip(2, 3.0, 0.5)
        back = parse_complex(serialize_complex(M))
        assert back.marked is not None
        assert back.marked.marks == mg.marks
        assert back.marked.params == mg.params
        assert back.marked.path.length == pytest.approx(mg.path.length, abs=0)

    def test_angled_only_round_trip(self):
        m = gen_standard("flat_torus")
        base = m.base
        from catkit.io import HEADER

        text = serialize_complex(base)
        assert text.startswith(HEADER)
        back = parse_complex(text)
        assert back == base

    def test_round_trip_survives_subdivision(self):
        from catkit.complexes import subdivide_edge

        base = gen_standard("flat_torus").base
        for e in (0, 3, 1):
            base = subdivide_edge(base, e)
            text = serialize_complex(base)
            assert parse_complex(text) == base


class TestParseErrors:
    def test_missing_header(self):
        with pytest.raises(ComplexFileError):
            parse_complex("[vertices]\ncount 1\n")

    def test_bad_angle_reports_line(self):
        m = gen_standard("disc_triangle")
        text = serialize_complex(m)
        lines = text.splitlines()
        idx = next(i for i, ln in enumerate(lines)
                   if ln and ln[0].isdigit() and len(ln.split()) == 3)
        parts = lines[idx].split()
        lines[idx] = f"{parts[0]} {parts[1]} 7.0"
        with pytest.raises(ComplexFileError) as err:
            parse_complex("\n".join(lines))
        assert err.value.line == idx + 1
        assert "7.0" in str(err.value)

    def test_edge_out_of_range(self):
        text = ("catkit-complex 1\n[vertices]\ncount 2\n[edges]\n0 5\n"
                "[faces]\n1 -1\n")
        with pytest.raises(ComplexFileError):
            parse_complex(text)

    def test_link_file(self):
        link = SimplicialLink.from_lists(5, [(i, (i + 1) % 5) for i in range(5)])
        text = serialize_link(link)
        assert parse_link(text) == link


class TestCliNumeric:
    def test_eta(self):
        code, out = run_capture(["eta", "--eps", "1.0"])
        assert code == 0
        assert float(out.strip()) == pytest.approx(14.597822866781558, rel=1e-12)
        # 17 significant digits
        assert len(out.strip().replace(".", "").replace("-", "")) >= 16

    def test_bound(self):
        code, out = run_capture(["bound", "--eps", "0.5", "--L", "3.0"])
        assert code == 0
        assert float(out.strip()) == pytest.approx(327.54839138403603, rel=1e-12)

    def test_shadow_k(self):
        code, out = run_capture(["shadow-k", "--delta", "1.0", "--eps", "0.5"])
        assert code == 0
        assert float(out.strip()) == 3.0

    def test_bound_with_rmin(self):
        code, out = run_capture(["bound", "--eps", "0.5", "--L", "3.0",
                                 "--rmin", "3.0"])
        assert code == 0
        assert float(out.strip()) == pytest.approx(327.54839138403603, rel=1e-12)
        # invalid r_min is a check failure
        code, _ = run_capture(["bound", "--eps", "0.5", "--L", "3.0",
                               "--rmin", "0.5"])
        assert code == 1

    def test_usage_error_exit_2(self):
        code, _ = run_capture(["eta"])
        assert code == 2
        code, _ = run_capture(["no-such-command"])
        assert code == 2


class TestCliFiles:
    def test_gauss_bonnet_pass(self, tmp_path):
        path = tmp_path / "torus.cx"
        path.write_text(serialize_complex(gen_standard("flat_torus")),
                        encoding="utf-8")
        code, out = run_capture(["gauss-bonnet", str(path)])
        assert code == 0
        assert "PASS" in out
        residual = float(next(ln for ln in out.splitlines()
                              if ln.startswith("residual")).split()[1])
        assert abs(residual) < 1e-9

    def test_gauss_bonnet_parse_error_exit_2(self, tmp_path):
        path = tmp_path / "bad.cx"
        path.write_text("not a complex\n", encoding="utf-8")
        code, out = run_capture(["gauss-bonnet", str(path)])
        assert code == 2

    def test_link_check(self, tmp_path):
        path = tmp_path / "surface.cx"
        path.write_text(serialize_complex(gen_surface(2)), encoding="utf-8")
        code, out = run_capture(["link-check", str(path)])
        assert code == 0
        assert "PASS" in out
        assert "cat-1-admissible" in out

    def test_link_check_failure_exit_1(self, tmp_path):
        # the tetrahedron boundary is positively curved, so its vertex links
        # have girth pi < 2 pi
        path = tmp_path / "sphere.cx"
        path.write_text(serialize_complex(gen_standard("sphere_tetrahedron")),
                        encoding="utf-8")
        code, out = run_capture(["link-check", str(path)])
        assert code == 1
        assert "FAIL" in out and "cat0-VIOLATED" in out

    def test_cube_links_c5(self, tmp_path):
        link = SimplicialLink.from_lists(5, [(i, (i + 1) % 5) for i in range(5)])
        path = tmp_path / "c5link.cx"
        path.write_text(serialize_link(link), encoding="utf-8")
        code, out = run_capture(["cube-links", str(path)])
        assert code == 0
        assert out.startswith("1 CAT(-1) vertex")

    def test_cube_links_c4(self, tmp_path):
        link = SimplicialLink.from_lists(4, [(i, (i + 1) % 4) for i in range(4)])
        path = tmp_path / "c4link.cx"
        path.write_text(serialize_link(link), encoding="utf-8")
        code, out = run_capture(["cube-links", str(path)])
        assert code == 0
        assert out.startswith("0 CAT(-1) vertices")

    def test_generate_and_distance(self, tmp_path):
        path = tmp_path / "strip.cx"
        code, out = run_capture(["generate", "beaded_strip", "--beads", "2",
                                 "--L", "3.0", "--eps", "0.5",
                                 "--out", str(path)])
        assert code == 0 and path.exists()
        code, out = run_capture(["distance", str(path), "--src", "v:0",
                                 "--dst", "v:3", "--mesh", "0.2"])
        assert code == 0
        float(out.strip())

    def test_generate_figure3_prints_presentation(self):
        code, out = run_capture(["generate", "figure3"])
        assert code == 0
        assert "generators: a1 a2 a3 a4 b1 b2 b3 b4" in out

    def test_bad_location_spec(self, tmp_path):
        path = tmp_path / "strip.cx"
        run_capture(["generate", "beaded_strip", "--beads", "1", "--L", "3.0",
                     "--eps", "0.5", "--out", str(path)])
        code, out = run_capture(["distance", str(path), "--src", "w:0",
                                 "--dst", "v:1"])
        assert code == 2


class TestCliDeterminism:
    def test_contract_test_byte_identical(self, tmp_path):
        path = tmp_path / "strip.cx"
        run_capture(["generate", "beaded_strip", "--beads", "1", "--L", "3.0",
                     "--eps", "0.5", "--out", str(path)])
        argv = ["contract-test", str(path), "--trials", "6", "--seed", "11",
                "--mesh", "0.25"]
        out_a = run_capture(argv)
        out_b = run_capture(argv)
        assert out_a == out_b
        assert out_a[0] == 0

    def test_records_file_deterministic(self, tmp_path):
        path = tmp_path / "strip.cx"
        run_capture(["generate", "beaded_strip", "--beads", "1", "--L", "3.0",
                     "--eps", "0.5", "--out", str(path)])
        rec_a = tmp_path / "a.jsonl"
        rec_b = tmp_path / "b.jsonl"
        for rec in (rec_a, rec_b):
            code, _ = run_capture(["contract-test", str(path), "--trials", "4",
                                   "--seed", "3", "--mesh", "0.25",
                                   "--out", str(rec)])
            assert code == 0
        assert rec_a.read_bytes() == rec_b.read_bytes()

    def test_generate_byte_identical(self):
        a = run_capture(["generate", "surface", "--genus", "2"])
        b = run_capture(["generate", "surface", "--genus", "2"])
        assert a == b


class TestCliProp2:
    def test_prop2_verify_runs(self, tmp_path):
        path = tmp_path / "strip.cx"
        run_capture(["generate", "beaded_strip", "--beads", "1", "--L", "3.0",
                     "--eps", "0.5", "--out", str(path)])
        # x before the bead above the axis, y after the bead below it
        code, out = run_capture(["prop2-verify", str(path),
                                 "--x", "f:0:0.6,0.2,0.2",
                                 "--y", "f:22:0.3,0.5,0.2",
                                 "--mesh", "0.2", "--tol", "0.05"])
        assert "certificate with N=" in out
        assert code in (0, 1)

    def test_prop2_verify_degenerate_window(self, tmp_path):
        path = tmp_path / "strip.cx"
        run_capture(["generate", "beaded_strip", "--beads", "1", "--L", "3.0",
                     "--eps", "0.5", "--out", str(path)])
        # mirror-image pair straddling the axis: the window collapses to a
        # segment and certifies nothing, which passes trivially with N=0
        code, out = run_capture(["prop2-verify", str(path),
                                 "--x", "v:1", "--y", "v:2",
                                 "--mesh", "0.25"])
        assert code == 0
        assert "N=0" in out
