import json

import pytest

from chowforms.cli import main, parse_problem
from chowforms.errors import ParseError
from chowforms.mpoly import parse_poly


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


LINE_P3 = "ring x0 x1 x2 x3\npoly x2\npoly x3\ndim 1\n"
POINT_P2 = "ring x0 x1 x2\npoly x1\npoly x2\ndim 0\n"
CONIC = "ring x0 x1 x2\npoly x0*x2 - x1^2\ndim 1\n"
PRODUCT = ("ring x0 x1 x2 x3 y0 y1 y2 y3\n"
           "blocks (x0 x1 x2 x3)(y0 y1 y2 y3)\n"
           "poly x3\npoly x0*x2 - x1^2\n"
           "poly y3\npoly y0^2 + y1^2 - y2^2\n"
           "dim 2\n")


class TestParser:
    def test_basic(self):
        p = parse_problem("ring x0 x1 x2\npoly x0*x2 - x1^2\ndim 1\n")
        assert p.vars.names == ("x0", "x1", "x2")
        assert p.dim == 1 and len(p.polys) == 1

    def test_blocks_and_format(self):
        p = parse_problem("ring x0 x1 y0 y1\nblocks (x0 x1)(y0 y1)\n"
                          "poly x0*y0 + x1*y1\nformat 1 0\n")
        assert p.blocks == [("x0", "x1"), ("y0", "y1")]
        assert p.format == (1, 0)
        assert p.vars.blocks == ((0, 1), (2, 3))

    def test_comments_and_blanks(self):
        p = parse_problem("# a conic\nring x0 x1 x2\n\npoly x0*x2 - x1^2 "
                          "# trailing\ndim 1\n")
        assert len(p.polys) == 1

    def test_malformed_poly_reports_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_problem("ring x0 x1\npoly x0 +\n")

    def test_unknown_variable_reports_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_problem("ring x0 x1\npoly x0 + z9\n")

    def test_unknown_directive(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_problem("rang x0 x1\n")

    def test_missing_ring(self):
        with pytest.raises(ParseError):
            parse_problem("poly 3\n")

    def test_blocks_must_partition(self):
        with pytest.raises(ParseError):
            parse_problem("ring x0 x1 y0\nblocks (x0 x1)(y0 y9)\npoly x0\n")


class TestCommands:
    def test_chow_line_in_p3(self, tmp_path, capsys):
        assert main(["chow", write(tmp_path, "p", LINE_P3)]) == 0
        out = capsys.readouterr().out.strip()
        assert out == "u00*u11 - u01*u10"

    def test_chow_ci_point(self, tmp_path, capsys):
        assert main(["chow-ci", write(tmp_path, "p", POINT_P2)]) == 0
        assert capsys.readouterr().out.strip() == "u00"

    def test_hurwitz_conic(self, tmp_path, capsys):
        assert main(["hurwitz", write(tmp_path, "p", CONIC)]) == 0
        out = capsys.readouterr().out.strip()
        got = parse_poly(out.replace("u", "v"),
                         __import__("chowforms").VarTable(
                             ("v10", "v11", "v12")))
        expected = parse_poly("v11^2 - 4*v10*v12", got.vars)
        assert got == expected.normalized()

    def test_support_product(self, tmp_path, capsys):
        assert main(["support", write(tmp_path, "p", PRODUCT)]) == 0
        assert capsys.readouterr().out.strip() == "2 2"

    def test_resultant_with_parameters(self, tmp_path, capsys):
        text = ("ring x0 x1 u v\nblocks (x0 x1)(u v)\n"
                "poly u*x0 + v*x1\npoly x0 - x1\n")
        assert main(["resultant", write(tmp_path, "p", text)]) == 0
        assert capsys.readouterr().out.strip() == "u + v"

    def test_det(self, tmp_path, capsys):
        text = ("ring x y\npoly x\npoly 1\npoly 1\npoly y\n")
        assert main(["det", write(tmp_path, "p", text)]) == 0
        assert capsys.readouterr().out.strip() == "x*y - 1"

    def test_bounds_projective(self, tmp_path, capsys):
        assert main(["bounds", write(tmp_path, "p", CONIC)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["degree_bound"] == 2

    def test_bounds_only_flag(self, tmp_path, capsys):
        path = write(tmp_path, "p", CONIC)
        assert main(["chow", "--bounds-only", path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["degree_bound"] == 2

    def test_multichow_point_pair(self, tmp_path, capsys):
        text = ("ring x0 x1 y0 y1\nblocks (x0 x1)(y0 y1)\n"
                "poly 2*x0 - x1\npoly 5*y0 - 3*y1\ndim 0\nformat 1 0\n")
        assert main(["multichow", write(tmp_path, "p", text)]) == 0
        assert capsys.readouterr().out.strip() == "3*u2_0_0 + 5*u2_0_1"


class TestPolymatroidCommand:
    TABLE = json.dumps({"n": [3, 3],
                        "table": {"0": 1, "1": 1, "0 1": 2}})

    def test_truncate_of_dual_table(self, tmp_path, capsys):
        # Dual of the product dim table, rank 4, bases {(2,2)}.
        dual = json.dumps({"n": [3, 3],
                           "table": {"0": 2, "1": 2, "0 1": 4}})
        path = write(tmp_path, "t.json", dual)
        assert main(["polymatroid", "truncate", path]) == 0
        assert capsys.readouterr().out.strip() == "1 2\n2 1"

    def test_bases(self, tmp_path, capsys):
        path = write(tmp_path, "t.json", self.TABLE)
        assert main(["polymatroid", "bases", path]) == 0
        assert capsys.readouterr().out.strip() == "1 1"

    def test_dual(self, tmp_path, capsys):
        path = write(tmp_path, "t.json", self.TABLE)
        assert main(["polymatroid", "dual", path]) == 0
        assert capsys.readouterr().out.strip() == "2 2"

    def test_bad_json_exits_4(self, tmp_path, capsys):
        path = write(tmp_path, "t.json", "{nope")
        assert main(["polymatroid", "dual", path]) == 4

    def test_bad_op_exits_2(self, tmp_path, capsys):
        path = write(tmp_path, "t.json", self.TABLE)
        assert main(["polymatroid", "widen", path]) == 2


class TestExitCodes:
    def test_parse_error_is_4(self, tmp_path, capsys):
        assert main(["chow", write(tmp_path, "p", "ring x0\npoly x0 +\n")]) \
            == 4
        assert "line 2" in capsys.readouterr().err

    def test_missing_dim_is_2(self, tmp_path, capsys):
        assert main(["chow", write(tmp_path, "p",
                                   "ring x0 x1 x2\npoly x1\npoly x2\n")]) == 2

    def test_missing_file_is_2(self, tmp_path, capsys):
        assert main(["chow", str(tmp_path / "absent")]) == 2

    def test_linear_hurwitz_is_2(self, tmp_path, capsys):
        text = "ring x0 x1 x2\npoly x0\ndim 1\n"
        assert main(["hurwitz", write(tmp_path, "p", text)]) == 2


class TestDeterminismAndMetadata:
    def test_byte_identical_stdout(self, tmp_path, capsys):
        path = write(tmp_path, "p", CONIC)
        assert main(["hurwitz", "--seed", "5", path]) == 0
        first = capsys.readouterr().out
        assert main(["hurwitz", "--seed", "5", path]) == 0
        assert capsys.readouterr().out == first

    def test_json_metadata_keys(self, tmp_path, capsys):
        path = write(tmp_path, "p", LINE_P3)
        assert main(["chow", "--json", path]) == 0
        meta = json.loads(capsys.readouterr().err)
        for key in ("degrees_per_block", "bitsize", "seed", "wall_ms",
                    "algorithm"):
            assert key in meta

    def test_round_trip_reparse(self, tmp_path, capsys):
        from chowforms.mpoly import VarTable
        path = write(tmp_path, "p", CONIC)
        assert main(["hurwitz", path]) == 0
        out = capsys.readouterr().out.strip()
        vt = VarTable(("u10", "u11", "u12"))
        assert parse_poly(out, vt).to_text() == out
