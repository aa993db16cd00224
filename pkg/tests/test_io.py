import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from projdecomp.errors import ParseError
from projdecomp.matrix import Matrix
from projdecomp.matrixio import guess_format, parse_matrix, read_csv, write_csv, write_matrix
from projdecomp.results import ResultDocument
from projdecomp.solver import decompose


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestCSV:
    def test_simple(self, tmp_path):
        M = parse_matrix(write(tmp_path, "a.csv", "1,2\n3,4\n"))
        np.testing.assert_array_equal(M.toarray(), [[1, 2], [3, 4]])

    def test_header_and_comments(self):
        a, header = read_csv("# produced by hand\nx, y\n1.5,-2\n\n3e2,4\n")
        assert header == ["x", "y"]
        np.testing.assert_array_equal(a, [[1.5, -2], [300, 4]])

    def test_ragged(self, tmp_path):
        with pytest.raises(ParseError, match="ragged") as info:
            parse_matrix(write(tmp_path, "r.csv", "1,2\n3\n"))
        assert info.value.line == 2
        assert ":2:" in str(info.value)

    def test_non_numeric(self):
        with pytest.raises(ParseError, match="non-numeric") as info:
            read_csv("1,2\n3,abc\n")
        assert info.value.line == 2

    def test_second_text_row_is_not_header(self):
        with pytest.raises(ParseError) as info:
            read_csv("a,b\nc,d\n")
        assert info.value.line == 2

    def test_non_finite(self):
        with pytest.raises(ParseError, match="non-finite"):
            read_csv("1,inf\n")

    def test_empty(self):
        with pytest.raises(ParseError, match="no numeric rows"):
            read_csv("# nothing\n")


class TestMatrixMarket:
    def test_coordinate(self, tmp_path):
        text = "%%MatrixMarket matrix coordinate real general\n% comment\n2 2 2\n1 1 1.0\n2 2 -3.0\n"
        M = parse_matrix(write(tmp_path, "d.mtx", text))
        assert M.is_sparse
        np.testing.assert_array_equal(M.toarray(), np.diag([1.0, -3.0]))

    def test_array_column_major(self, tmp_path):
        text = "%%MatrixMarket matrix array real general\n2 2\n1\n3\n2\n4\n"
        np.testing.assert_array_equal(parse_matrix(write(tmp_path, "a.mm", text)).toarray(), [[1, 2], [3, 4]])

    def test_integer_field(self, tmp_path):
        text = "%%MatrixMarket matrix coordinate integer general\n1 2 1\n1 2 7\n"
        np.testing.assert_array_equal(parse_matrix(write(tmp_path, "i.mtx", text)).toarray(), [[0, 7]])

    @pytest.mark.parametrize(
        "text,line",
        [
            ("%%MatrixMarket tensor coordinate real general\n1 1 1\n1 1 1\n", 1),
            ("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n", 1),
            ("%%MatrixMarket matrix coordinate real symmetric\n1 1 1\n1 1 1\n", 1),
            ("%%MatrixMarket matrix coordinate real general\n2 2\n", 2),
            ("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n", 3),
            ("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n1 1 2.0\n", 4),
            ("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 x\n", 3),
        ],
    )
    def test_errors_name_line(self, tmp_path, text, line):
        with pytest.raises(ParseError) as info:
            parse_matrix(write(tmp_path, "bad.mtx", text))
        assert info.value.line == line

    def test_count_mismatch(self, tmp_path):
        with pytest.raises(ParseError, match="expected 2 entries"):
            parse_matrix(write(tmp_path, "c.mtx", "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n"))


def test_guess_format():
    assert guess_format("x.MTX") == "matrixmarket"
    assert guess_format("x.mm") == "matrixmarket"
    assert guess_format("x.csv") == "csv"
    assert guess_format("x") == "csv"


def test_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        parse_matrix(write(tmp_path, "a.csv", "1\n"), "xlsx")


values = st.one_of(st.just(0.0), st.floats(allow_nan=False, allow_infinity=False))


class TestRoundTrip:
    @given(arrays(np.float64, st.tuples(st.integers(1, 6), st.integers(1, 6)), elements=values))
    def test_hypothesis(self, a):
        import tempfile
        from pathlib import Path

        with tempfile.TemporaryDirectory() as d:
            for M in (Matrix(a), Matrix(a).to_sparse()):
                for name in ("m.csv", "m.mtx"):
                    p = Path(d) / name
                    write_matrix(M, p)
                    back = parse_matrix(p)
                    np.testing.assert_array_equal(back.toarray(), a)
                    if name == "m.mtx":
                        assert back.is_sparse == M.is_sparse

    def test_corpus(self, tmp_path, corpus):
        for k, a in enumerate(corpus):
            for name in (f"{k}.csv", f"{k}.mtx", f"{k}s.mtx"):
                M = Matrix(a).to_sparse() if name.endswith("s.mtx") else Matrix(a)
                write_matrix(M, tmp_path / name)
                assert np.array_equal(parse_matrix(tmp_path / name).toarray(), a)

    def test_csv_header_preserved(self, tmp_path):
        write_csv([[1.0, -0.1]], tmp_path / "h.csv", header=["x", "y"], comments=["seed=3"])
        a, header = read_csv((tmp_path / "h.csv").read_text())
        assert header == ["x", "y"] and a.tolist() == [[1.0, -0.1]]


class TestResultDocument:
    def _decomp(self):
        return decompose(np.array([[1.0, 2.0, 0.5], [3.0, 4.0, 7.0]]))

    def test_inline_roundtrip(self, tmp_path):
        d = self._decomp()
        doc = ResultDocument.from_decomposition(d, inline_w=True)
        doc.dump(tmp_path / "r.json")
        back = ResultDocument.load(tmp_path / "r.json")
        assert back == doc
        d2 = back.to_decomposition()
        assert d2.sigma == d.sigma
        np.testing.assert_array_equal(d2.alpha, d.alpha)
        np.testing.assert_array_equal(d2.beta, d.beta)
        np.testing.assert_array_equal(d2.W.toarray(), d.W.toarray())
        assert d2.report.status == d.report.status and d2.report.residual == d.report.residual

    def test_sparse_inline(self, tmp_path):
        d = decompose(Matrix(np.diag([2.0, -3.0])).to_sparse())
        doc = ResultDocument.from_decomposition(d, inline_w=True)
        doc.dump(tmp_path / "r.json")
        W = ResultDocument.load(tmp_path / "r.json").load_w()
        assert W.is_sparse
        np.testing.assert_array_equal(W.toarray(), d.W.toarray())

    def test_relative_path(self, tmp_path):
        d = self._decomp()
        (tmp_path / "sub").mkdir()
        write_matrix(d.W, tmp_path / "sub" / "w.mtx")
        ResultDocument.from_decomposition(d, w_path="w.mtx").dump(tmp_path / "sub" / "r.json")
        W = ResultDocument.load(tmp_path / "sub" / "r.json").load_w()
        np.testing.assert_array_equal(W.toarray(), d.W.toarray())

    def test_fields(self, tmp_path):
        doc = ResultDocument.from_decomposition(self._decomp())
        raw = doc.to_dict()
        assert set(raw) >= {"sigma", "alpha", "beta", "gauge_policy", "report", "matrix_ref", "tool_version"}
        assert set(raw["report"]) == {"iterations", "residual", "status"}
        json.dumps(raw)

    def test_no_w(self):
        with pytest.raises(ValueError, match="no W"):
            ResultDocument.from_decomposition(self._decomp()).load_w()

    def test_malformed(self):
        with pytest.raises(ValueError, match="malformed"):
            ResultDocument.from_dict({"sigma": 1.0})
