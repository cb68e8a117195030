"""Regenerate the example documents in docs/fixtures (one or more per kind)."""

from pathlib import Path

from qcat import (
    FinFunctor,
    from_bialgebra,
    from_small_category,
    functor_from_small,
    group_algebra,
    identity_comodule,
    nat_from_components,
    trivial_hopf_group_coalgebra,
    walking_arrow,
)
from qcat.constructors import cyclic_group, symmetric_group_3
from qcat import serialize

OUT = Path(__file__).resolve().parent.parent / "docs" / "fixtures"


def write(name: str, doc: dict) -> None:
    (OUT / name).write_text(serialize.dumps(doc), encoding="utf-8")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    two = walking_arrow()
    q_two = from_small_category(two, "finset")

    write("fincat-two.json", serialize.fincat_to_json(two))
    write("comonoid-objects.json", serialize.comonoid_document(q_two.objects))
    write("comodule-identity.json", serialize.comodule_to_json(identity_comodule(q_two.objects)))
    write("quantum-graph-two.json", serialize.graph_to_json(q_two.graph, "2"))
    write("quantum-category-two.json", serialize.quantum_category_to_json(q_two))

    elements, mult, unit = cyclic_group(2)
    qc2 = group_algebra(elements, mult, unit, "Q[C2]")
    write("bialgebra-qc2.json", serialize.bialgebra_to_json(qc2))
    q, _ = from_bialgebra(qc2)
    write("quantum-category-qc2.json", serialize.quantum_category_to_json(q))
    mutant = q.with_maps(nu0=q.ctx.reverse(q.nu0.data.ctx.scale(q.nu0.data, 2)))
    write("quantum-category-qc2-scaled-unit.json", serialize.quantum_category_to_json(mutant))

    s3 = symmetric_group_3()
    write("bialgebra-qs3.json", serialize.bialgebra_to_json(group_algebra(*s3, "Q[S3]")))
    write(
        "hopf-group-coalgebra-trivial-c2.json",
        serialize.hopf_group_coalgebra_to_json(trivial_hopf_group_coalgebra(elements, mult, unit, "C2")),
    )

    ref = "quantum-category-two.json"
    functors = {
        "id": FinFunctor(two, two, {0: 0, 1: 1}, {"id0": "id0", "id1": "id1", "a": "a"}),
        "const0": FinFunctor(two, two, {0: 0, 1: 0}, {"id0": "id0", "id1": "id0", "a": "id0"}),
        "const1": FinFunctor(two, two, {0: 1, 1: 1}, {"id0": "id1", "id1": "id1", "a": "id1"}),
    }
    for name, F in functors.items():
        qf = functor_from_small(F, q_two, q_two, name)
        write(f"functor-{name}.json", serialize.functor_to_json(qf, ref, ref))
    n = nat_from_components(
        {0: "a", 1: "a"},
        functors["const0"],
        functors["const1"],
        functor_from_small(functors["const0"], q_two, q_two, "const0"),
        functor_from_small(functors["const1"], q_two, q_two, "const1"),
    )
    write("natural-const0-const1.json", serialize.natural_to_json(n, "functor-const0.json", "functor-const1.json"))


if __name__ == "__main__":
    main()
