from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from semiloc import io
from semiloc.constructions import prime_field, upper_triangular
from semiloc.errors import ParseError, ValidationError
from semiloc.generators import generate, module_instances, random_algebra
from semiloc.modules import ModuleHom, endo_algebra, regular_module
from semiloc.radical import radical

INSTANCES = Path(__file__).resolve().parent.parent / "instances"

UT2_TEXT = """\
alg p=2 dim=3 name=UT2
c 0 0 0 1
c 0 1 1 1
c 1 2 1 1
c 2 2 2 1
unit 1 0 1
"""


def test_canonical_roundtrip():
    assert io.serialize(io.parse(UT2_TEXT)) == UT2_TEXT


def test_comments_and_blank_lines_ignored():
    text = "# a comment\n\n" + UT2_TEXT.replace("unit 1 0 1", "unit 1 0 1   # identity")
    assert io.serialize(io.parse(text)) == UT2_TEXT


def test_hand_authored_ut2_radical():
    A = io.load(INSTANCES / "ut2.txt").first("algebra")
    assert A.dim == 3 and radical(A).radical.dim == 1


@pytest.mark.parametrize("path", sorted(INSTANCES.glob("*.txt")), ids=lambda p: p.name)
def test_shipped_instances_roundtrip(path):
    doc = io.load(path)
    canon = io.serialize(doc)
    assert io.serialize(io.parse(canon)) == canon


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("alg p=2 dim=1 name=F\nunit x\n", 2, 6),
        ("alg p=2 dim=1\nunit 1\n", 1, 14),
        ("alg p=two dim=1 name=F\nc 0 0 0 1\nunit 1\n", 1, 7),
        ("c 0 0 0 1\n", 1, 1),
        ("alg p=2 dim=1 name=F\nc 0 0 3 1\nunit 1\n", 2, 7),
        ("alg p=2 dim=2 name=F\nunit 1\n", 2, 6),
        ("alg p=2 dim=1 name=F\nc 0 0 0 1\n", 1, 1),
        ("alg p=2 dim=1 name=F\nc 0 0 0 1\nunit 1\nalg p=2 dim=1 name=F\nc 0 0 0 1\nunit 1\n", 4, 15),
        ("alg p=2 dim=1 name=F\nc 0 0 0 1\nunit 1\nmod p=2 dim=1 over=G name=M\n", 4, 15),
        ("alg p=2 dim=1 name=F\nbogus 1\nunit 1\n", 2, 1),
    ],
)
def test_syntax_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as ei:
        io.parse(text)
    assert (ei.value.line, ei.value.column) == (line, col)
    assert f"line {line}, column {col}" in str(ei.value)


def test_validation_errors_forwarded():
    bad = "alg p=2 dim=2 name=X\nc 0 0 1 1\nc 1 0 0 1\nunit 1 0\n"
    with pytest.raises(ValidationError):
        io.parse(bad)
    bad_mod = UT2_TEXT + "mod p=2 dim=1 over=UT2 name=M\nact 0 : 0\nact 1 : 0\nact 2 : 0\n"
    with pytest.raises(ValidationError):
        io.parse(bad_mod)


def test_document_for_morphism_and_hom():
    _, incl = upper_triangular(prime_field(2), 2)
    text = io.serialize(io.document_for(incl, name="phi", family="triangular"))
    doc = io.parse(text)
    phi = doc.first("morphism")
    assert np.array_equal(phi.matrix, incl.matrix)
    assert doc.of_kind("morphism")[0].meta == {"family": "triangular"}
    assert io.serialize(doc) == text
    R = regular_module(incl.domain)
    f = ModuleHom(R, R, endo_algebra(R).matrices[0])
    doc = io.parse(io.serialize(io.document_for(f)))
    assert np.array_equal(doc.first("module-hom").matrix, f.matrix)


def test_dump_and_load(tmp_path):
    doc = io.parse(UT2_TEXT)
    io.dump(doc, tmp_path / "a.txt")
    assert (tmp_path / "a.txt").read_text() == UT2_TEXT


@given(st.integers(0, 2**32 - 1))
def test_generated_algebra_roundtrip(seed):
    A = random_algebra(np.random.default_rng(seed))
    text = io.serialize(io.document_for(A))
    B = io.parse(text).first("algebra")
    assert np.array_equal(A.const, B.const) and np.array_equal(A.unit, B.unit)
    assert io.serialize(io.parse(text)) == text


@given(st.integers(0, 2**32 - 1))
def test_generated_module_roundtrip(seed):
    (_, M), = module_instances(np.random.default_rng(seed), 1, cap=2**8, max_dim=5, end_cap=2**10)
    text = io.serialize(io.document_for(M))
    N = io.parse(text).first("module")
    assert np.array_equal(M.actions, N.actions)


def test_generate_document_roundtrip():
    doc = io.Document(generate("triangular", {"n": "2", "p": "3"}, seed=0, count=2))
    text = io.serialize(doc)
    assert io.serialize(io.parse(text)) == text
