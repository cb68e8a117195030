import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcat.context import FdVect, FinSet, Opposite, context_from_tag, underlying
from qcat.errors import BackendMismatch, DoesNotEqualize, LawViolation, ShapeMismatch
from qcat.linalg import ExactMatrix

FS, FV, OP = FinSet(), FdVect(), Opposite(FdVect())


def M(rows):
    return ExactMatrix.from_rows(rows)


# -- objects and tensor ----------------------------------------------------------------


def test_finset_tensor_order_is_left_major():
    x = FS.object("X", ["a", "b"])
    y = FS.object("Y", [0, 1, 2])
    assert FS.tensor(x, y).labels == (("a", 0), ("a", 1), ("a", 2), ("b", 0), ("b", 1), ("b", 2))


def test_tensor_with_unit_is_strict():
    x = FV.object("X", ["p", "q"])
    assert FV.tensor(FV.unit(), x) == x == FV.tensor(x, FV.unit())
    assert FV.unit().size == 1 and FV.unit().labels == ((),)


def test_fdvect_tensor_of_morphisms_is_kron():
    one, two = FV.object("O", [0]), FV.object("T", [0, 1])
    f = FV.morphism(two, one, M([[1, 1]]))
    g = FV.identity(two)
    h = FV.tensor(f, g)
    assert h.data.shape == (2, 4)
    assert h.data == M([[1, 0, 1, 0], [0, 1, 0, 1]])


def test_mixing_backends_is_refused():
    with pytest.raises(BackendMismatch):
        FS.tensor(FS.object("X", [0]), FV.object("Y", [0]))


def test_shape_is_checked():
    x = FV.object("X", [0, 1])
    with pytest.raises(ShapeMismatch):
        FV.morphism(x, x, M([[1, 0, 0]]))
    with pytest.raises((ShapeMismatch, ValueError)):
        FS.morphism(x.__class__("finset", x.factors), FS.object("Y", [0]), [0, 3])


def test_context_tags_round_trip():
    for ctx in (FS, FV, OP, Opposite(Opposite(FinSet()))):
        assert context_from_tag(ctx.tag) == ctx
    with pytest.raises(ValueError):
        context_from_tag("vect")


# -- braiding -------------------------------------------------------------------------


def test_braiding_examples():
    x = FS.object("X", ["a", "b"])
    y = FS.object("Y", [0, 1])
    c = FS.braiding(x, y)
    src = FS.tensor(x, y)
    tgt = FS.tensor(y, x)
    assert tgt.labels[c.data[src.index(("a", 1))]] == (1, "a")
    assert FS.braiding(y, x) @ c == FS.identity(src)
    assert FS.braiding(FS.unit(), x) == FS.identity(x)


def finset_maps(draw, n, m):
    return draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))


@st.composite
def finset_pair(draw):
    dims = [draw(st.integers(1, 3)) for _ in range(4)]
    objs = [FS.object(f"X{k}", list(range(d))) for k, d in enumerate(dims)]
    f = FS.morphism(objs[0], objs[1], finset_maps(draw, dims[0], dims[1]))
    g = FS.morphism(objs[2], objs[3], finset_maps(draw, dims[2], dims[3]))
    return FS, f, g


@st.composite
def linear_pair(draw, ctx=FV):
    dims = [draw(st.integers(1, 3)) for _ in range(4)]
    objs = [ctx.object(f"X{k}", list(range(d))) for k, d in enumerate(dims)]

    def rand(r, c):
        return ExactMatrix(r, c, draw(st.lists(st.lists(st.integers(-2, 2), min_size=c, max_size=c), min_size=r, max_size=r)))

    if isinstance(ctx, Opposite):
        f = ctx.morphism(objs[0], objs[1], rand(dims[0], dims[1]))
        g = ctx.morphism(objs[2], objs[3], rand(dims[2], dims[3]))
    else:
        f = ctx.morphism(objs[0], objs[1], rand(dims[1], dims[0]))
        g = ctx.morphism(objs[2], objs[3], rand(dims[3], dims[2]))
    return ctx, f, g


@given(st.one_of(finset_pair(), linear_pair(), linear_pair(OP)))
def test_braiding_is_natural(case):
    ctx, f, g = case
    lhs = ctx.braiding(f.target, g.target) @ ctx.tensor(f, g)
    rhs = ctx.tensor(g, f) @ ctx.braiding(f.source, g.source)
    assert lhs == rhs


@given(st.one_of(finset_pair(), linear_pair(), linear_pair(OP)))
def test_tensor_is_functorial(case):
    ctx, f, g = case
    assert ctx.tensor(ctx.identity(f.target), g) @ ctx.tensor(f, ctx.identity(g.source)) == ctx.tensor(f, g)


# -- equalizers ----------------------------------------------------------------------------


def test_finset_equalizer_example():
    s = FS.object("S", [1, 2, 3])
    t = FS.object("T", [1, 2])
    f = FS.morphism(s, t, [0, 0, 1])
    g = FS.morphism(s, t, [0, 1, 1])
    eq = FS.coreflexive_equalizer(f, g)
    assert eq.object.labels == (1, 3)
    star = FS.object("*", ["*"])
    u = FS.factor_through_equalizer(eq, FS.morphism(star, s, [2]))
    assert eq.object.labels[u.data[0]] == 3
    with pytest.raises(DoesNotEqualize) as info:
        FS.factor_through_equalizer(eq, FS.morphism(star, s, [1]))
    assert info.value.witness is not None


def test_linear_equalizer_example():
    x = FV.object("X", [1, 2])
    f = FV.morphism(x, x, M([[1, 0], [0, 1]]))
    g = FV.morphism(x, x, M([[1, 0], [0, 0]]))
    eq = FV.coreflexive_equalizer(f, g)
    assert eq.inclusion.data == M([[1], [0]])
    assert FV.factor_through_equalizer(eq, eq.inclusion) == FV.identity(eq.object)


@pytest.mark.parametrize("ctx", [FS, FV, OP])
def test_equalizer_of_equal_maps_is_everything(ctx):
    x = ctx.object("X", [0, 1, 2])
    eq = ctx.coreflexive_equalizer(ctx.identity(x), ctx.identity(x))
    assert eq.object.size == 3
    assert eq.inclusion @ ctx.factor_through_mono(eq.inclusion, ctx.identity(x)) == ctx.identity(x)


def test_supplied_retraction_is_checked():
    s = FS.object("S", [0, 1])
    t = FS.object("T", [0, 1, 2])
    f = FS.morphism(s, t, [0, 1])
    g = FS.morphism(s, t, [0, 2])
    good = FS.morphism(t, s, [0, 1, 1])
    FS.coreflexive_equalizer(f, g, retraction=good)
    with pytest.raises(LawViolation):
        FS.coreflexive_equalizer(f, g, retraction=FS.morphism(t, s, [0, 0, 1]))


@st.composite
def coreflexive_pairs(draw, ctx):
    """``f, g: S -> T`` with a common retraction ``r: T -> S``."""
    n = draw(st.integers(1, 3))
    extra = draw(st.integers(0, 2))
    s = ctx.object("S", list(range(n)))
    t = ctx.object("T", list(range(n + extra)))
    if isinstance(ctx, FinSet):
        r_table = list(range(n)) + draw(st.lists(st.integers(0, n - 1), min_size=extra, max_size=extra))
        fibres = [[j for j, v in enumerate(r_table) if v == i] for i in range(n)]
        f = [draw(st.sampled_from(fib)) for fib in fibres]
        g = [draw(st.sampled_from(fib)) for fib in fibres]
        return ctx.morphism(s, t, f), ctx.morphism(s, t, g), ctx.morphism(t, s, r_table)

    def block(k):
        a = ExactMatrix(extra, n, draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=extra, max_size=extra)))
        rows = ExactMatrix.identity(n).to_rows() + a.to_rows()
        return ExactMatrix.from_rows(rows) if rows else ExactMatrix.zeros(0, n)

    fi, gi = block(0), block(1)
    r = ExactMatrix.from_rows([row + [0] * extra for row in ExactMatrix.identity(n).to_rows()])
    if isinstance(ctx, Opposite):
        # base maps T <- S reversed: the pair is f, g: S -> T in the opposite
        return (
            ctx.reverse(ctx.base.morphism(ctx.to_base(t), ctx.to_base(s), fi.T)),
            ctx.reverse(ctx.base.morphism(ctx.to_base(t), ctx.to_base(s), gi.T)),
            ctx.reverse(ctx.base.morphism(ctx.to_base(s), ctx.to_base(t), r.T)),
        )
    return ctx.morphism(s, t, fi), ctx.morphism(s, t, gi), ctx.morphism(t, s, r)


@pytest.mark.parametrize("ctx", [FS, FV, OP], ids=lambda c: c.tag)
@given(data=st.data())
def test_universal_property_and_uniqueness(ctx, data):
    f, g, r = data.draw(coreflexive_pairs(ctx))
    eq = ctx.coreflexive_equalizer(f, g, retraction=r)
    assert f @ eq.inclusion == g @ eq.inclusion
    # anything of the form inclusion . u equalizes, and factors back to u
    k = data.draw(st.integers(1, 3))
    w = ctx.object("W", list(range(k)))
    if isinstance(ctx, FinSet):
        if eq.object.size == 0:
            return
        u = ctx.morphism(w, eq.object, data.draw(st.lists(st.integers(0, eq.object.size - 1), min_size=k, max_size=k)))
    else:
        shape = (k, eq.object.size) if isinstance(ctx, Opposite) else (eq.object.size, k)
        entries = data.draw(st.lists(st.lists(st.integers(-2, 2), min_size=shape[1], max_size=shape[1]), min_size=shape[0], max_size=shape[0]))
        u = ctx.morphism(w, eq.object, ExactMatrix(*shape, entries))
    h = eq.inclusion @ u
    assert ctx.factor_through_equalizer(eq, h) == u
    assert ctx.factor_through_equalizer(eq, h) == ctx.factor_through_equalizer(eq, h)


@pytest.mark.parametrize("ctx", [FS, FV, OP], ids=lambda c: c.tag)
@given(data=st.data())
def test_tensor_preserves_coreflexive_equalizers(ctx, data):
    f, g, r = data.draw(coreflexive_pairs(ctx))
    eq = ctx.coreflexive_equalizer(f, g, retraction=r)
    x = ctx.object("X", list(range(data.draw(st.integers(1, 3)))))
    for side in ("left", "right"):
        comparison = ctx.tensor_comparison(x, eq, side)
        assert comparison.source.size == comparison.target.size == x.size * eq.object.size


# -- the opposite wrapper -----------------------------------------------------------------


@given(linear_pair())
def test_double_opposite_behaves_like_the_base(case):
    _, f, g = case
    op2 = Opposite(Opposite(FdVect()))

    def lift(h):
        inner = Opposite(FdVect())
        mid = inner.reverse(h)
        return op2.reverse(mid)

    F, G = lift(f), lift(g)
    assert underlying(op2.tensor(F, G)) == FV.tensor(f, g)
    assert underlying(op2.braiding(F.source, G.source)) == FV.braiding(f.source, g.source)
    if f.source == f.target:
        assert underlying(op2.compose(F, F)) == f @ f
        eq_base = FV.equalizer(f, FV.identity(f.source))
        eq_op2 = op2.equalizer(F, op2.identity(F.source))
        assert underlying(eq_op2.inclusion) == eq_base.inclusion


def test_opposite_equalizer_is_a_base_cokernel():
    x = OP.object("X", [0, 1])
    y = OP.object("Y", [0])
    # underlying maps Y -> X are columns; their equalizer here is the cokernel of the difference
    f = OP.morphism(x, y, M([[1], [0]]))
    g = OP.morphism(x, y, M([[0], [1]]))
    eq = OP.equalizer(f, g)
    assert eq.object.size == 1
    assert eq.inclusion.data.data == M([[1, 1]])


def test_differences_report_a_sparse_witness():
    x = FV.object("X", ["a", "b"])
    f = FV.morphism(x, x, M([[1, 0], [0, 1]]))
    g = FV.morphism(x, x, M([[1, 0], [0, 2]]))
    w = FV.difference(f, g)
    assert w.index == 1 and w.label == "b"
    assert w.lhs == {"b": "1"} and w.rhs == {"b": "2"}
    assert FV.difference(f, f) is None
