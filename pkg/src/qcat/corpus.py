"""Finite categories for exhaustive testing: every small one up to isomorphism,
seeded random larger ones, and all functor candidates between two of them."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations, product

from .constructors import FinCat, FinFunctor


def _layout(n: int, arrows: list[tuple[int, int]]):
    """Labels for ``n`` objects with identities plus the given non-identity arrows."""
    objects = list(range(n))
    ids = {o: f"id{o}" for o in objects}
    names = [f"m{k}" for k in range(len(arrows))]
    dom = {ids[o]: o for o in objects} | {names[k]: a for k, (a, _) in enumerate(arrows)}
    cod = {ids[o]: o for o in objects} | {names[k]: b for k, (_, b) in enumerate(arrows)}
    return objects, ids, names, dom, cod


def _build(n: int, arrows, table: dict, name="cat") -> FinCat:
    """``table`` maps pairs of non-identity indices to ``("id", o)`` or ``("m", k)``."""
    objects, ids, names, dom, cod = _layout(n, arrows)
    morphisms = [ids[o] for o in objects] + names
    comp = {}
    for x in morphisms:
        for y in morphisms:
            if cod[x] != dom[y]:
                continue
            if x in ids.values():
                comp[(x, y)] = y
            elif y in ids.values():
                comp[(x, y)] = x
            else:
                kind, v = table[(names.index(x), names.index(y))]
                comp[(x, y)] = ids[v] if kind == "id" else names[v]
    return FinCat.create(objects, morphisms, dom, cod, comp, ids, name)


def _encode(n, arrows, table, obj_perm, arrow_perm):
    """Structure after renaming objects by ``obj_perm`` and arrow ``k`` to ``arrow_perm[k]``."""
    k = len(arrows)
    new_arrows = [None] * k
    for old, new in enumerate(arrow_perm):
        a, b = arrows[old]
        new_arrows[new] = (obj_perm[a], obj_perm[b])
    new_table = {}
    for (x, y), (kind, v) in table.items():
        new_table[(arrow_perm[x], arrow_perm[y])] = (kind, obj_perm[v] if kind == "id" else arrow_perm[v])
    return (n, tuple(new_arrows), tuple(sorted(new_table.items())))


def canonical_form(n, arrows, table):
    """Lexicographically least encoding over all relabellings."""
    k = len(arrows)
    best = None
    for obj_perm in permutations(range(n)):
        for arrow_perm in permutations(range(k)):
            enc = _encode(n, arrows, table, obj_perm, arrow_perm)
            if best is None or enc < best:
                best = enc
    return best


def _table_options(n, arrows):
    """Allowed composites for each composable pair of non-identity arrows."""
    options = {}
    for x, (a, b) in enumerate(arrows):
        for y, (c, d) in enumerate(arrows):
            if b != c:
                continue
            opts = [("id", a)] if a == d else []
            opts += [("m", z) for z, (p, q) in enumerate(arrows) if p == a and q == d]
            options[(x, y)] = opts
    return options


def _associative(arrows, table, pairs_done=None) -> bool:
    """Associativity on every triple whose composites are all known."""

    def comp(x, y):
        # x, y are ("id", o) or ("m", k)
        if x[0] == "id":
            return y
        if y[0] == "id":
            return x
        return table.get((x[1], y[1]))

    k = len(arrows)
    for x, y, z in product(range(k), repeat=3):
        if arrows[x][1] != arrows[y][0] or arrows[y][1] != arrows[z][0]:
            continue
        xy = comp(("m", x), ("m", y))
        yz = comp(("m", y), ("m", z))
        if xy is None or yz is None:
            continue
        left = comp(xy, ("m", z))
        right = comp(("m", x), yz)
        if left is None or right is None:
            continue
        if left != right:
            return False
    return True


def _hom_layouts(n: int, k: int):
    """Every multiset of ``k`` arrows between ``n`` objects, as sorted lists."""
    slots = [(a, b) for a in range(n) for b in range(n)]
    seen = set()
    for combo in product(slots, repeat=k):
        key = tuple(sorted(combo))
        if key not in seen:
            seen.add(key)
            yield list(key)


@lru_cache(maxsize=None)
def small_categories(max_objects: int = 2, max_morphisms: int = 4) -> tuple[FinCat, ...]:
    """Every finite category within the bounds, one per isomorphism class."""
    found = {}
    for n in range(max_objects + 1):
        for k in range(max_morphisms - n + 1):
            if n == 0 and k:
                continue
            for arrows in _hom_layouts(n, k):
                options = _table_options(n, arrows)
                keys = sorted(options)
                for choice in product(*[options[key] for key in keys]):
                    table = dict(zip(keys, choice))
                    if not _associative(arrows, table):
                        continue
                    form = canonical_form(n, arrows, table)
                    if form not in found:
                        found[form] = form
    cats = []
    for idx, form in enumerate(sorted(found)):
        n, arrows, table = form
        cats.append(_build(n, list(arrows), dict(table), f"small{idx}"))
    return tuple(cats)


def random_category(rng: random.Random, max_objects: int = 3, max_morphisms: int = 6, attempts: int = 50) -> FinCat:
    """A random category by randomized backtracking over composition tables."""
    if max_objects < 1 or max_morphisms < 1:
        raise ValueError("a random category needs at least one object and its identity")
    for _ in range(attempts):
        n = rng.randint(1, min(max_objects, max_morphisms))
        k = rng.randint(0, max_morphisms - n)
        arrows = sorted((rng.randrange(n), rng.randrange(n)) for _ in range(k))
        options = _table_options(n, arrows)
        keys = sorted(options)
        table: dict = {}

        def search(i: int) -> bool:
            if i == len(keys):
                return True
            opts = list(options[keys[i]])
            rng.shuffle(opts)
            for v in opts:
                table[keys[i]] = v
                if _associative(arrows, table) and search(i + 1):
                    return True
                del table[keys[i]]
            return False

        if search(0):
            return _build(n, arrows, table, "random")
    raise RuntimeError("no category found within the attempt budget")


@lru_cache(maxsize=None)
def random_categories(count: int = 30, seed: int = 0, max_objects: int = 3, max_morphisms: int = 6) -> tuple[FinCat, ...]:
    """``count`` pairwise non-isomorphic random categories (deterministic for a seed)."""
    rng = random.Random(seed)
    seen, out = set(), []
    while len(out) < count:
        cat = random_category(rng, max_objects, max_morphisms)
        form = _form_of(cat)
        if form in seen:
            continue
        seen.add(form)
        out.append(FinCat.create(cat.objects, cat.morphisms, cat.dom, cat.cod, cat.comp, cat.ids, f"random{len(out)}"))
    return tuple(out)


def _form_of(cat: FinCat):
    n = len(cat.objects)
    obj_index = {o: i for i, o in enumerate(cat.objects)}
    ids = set(cat.ids.values())
    names = [m for m in cat.morphisms if m not in ids]
    arrows = [(obj_index[cat.dom[m]], obj_index[cat.cod[m]]) for m in names]
    inv_ids = {v: k for k, v in cat.ids.items()}
    table = {}
    for (x, y), z in cat.comp.items():
        if x in ids or y in ids:
            continue
        table[(names.index(x), names.index(y))] = ("id", obj_index[inv_ids[z]]) if z in ids else ("m", names.index(z))
    return canonical_form(n, arrows, table)


def are_isomorphic(c1: FinCat, c2: FinCat) -> bool:
    return _form_of(c1) == _form_of(c2)


def functor_candidates(source: FinCat, target: FinCat, endpoint_preserving_only: bool = False):
    """Every assignment of objects and morphisms; with the flag, only those that
    send each morphism between the images of its endpoints."""
    for obj_values in product(target.objects, repeat=len(source.objects)):
        on_obj = dict(zip(source.objects, obj_values))
        if endpoint_preserving_only:
            choices = [target.hom(on_obj[source.dom[m]], on_obj[source.cod[m]]) for m in source.morphisms]
        else:
            choices = [list(target.morphisms)] * len(source.morphisms)
        for mor_values in product(*choices):
            yield FinFunctor(source, target, on_obj, dict(zip(source.morphisms, mor_values)))


def functors(source: FinCat, target: FinCat) -> list[FinFunctor]:
    return [F for F in functor_candidates(source, target, True) if F.is_valid()]
