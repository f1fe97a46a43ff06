"""Write the JSON fixtures in data/ used by the README and the CLI tests."""

import argparse
from pathlib import Path

from operad_forge.algebras import module_algebra
from operad_forge.collection import Collection, trivial_actions
from operad_forge.io import algebra_to_json, collection_to_json, dump_json, monoid_to_json, operad_to_json
from operad_forge.operads import Monoid, ass_truncated, operad_from_monoid, terminal_operad
from operad_forge.trees import Profile


def fixtures():
    z3 = Monoid.cyclic(3)
    binary = Profile(("c", "c"), "c")
    gen = {binary: ("g",)}
    yield "terminal_a2.json", operad_to_json(terminal_operad(["a"], 2))
    yield "terminal_ab3.json", operad_to_json(terminal_operad(["a", "b"], 3))
    yield "ass3.json", operad_to_json(ass_truncated(3))
    yield "monoid_z3.json", monoid_to_json(z3)
    yield "p_z3.json", operad_to_json(operad_from_monoid(z3))
    yield "binary_generator.json", collection_to_json(Collection(("c",), gen, trivial_actions(gen)))

    regular = module_algebra(z3, z3.carrier, {(r, x): z3(r, x) for r in z3.carrier for x in z3.carrier})
    yield "z3_regular.json", algebra_to_json(regular, "p_z3.json")
    point = module_algebra(z3, ["*"], {(r, "*"): "*" for r in z3.carrier})
    yield "z3_point.json", algebra_to_json(point, "p_z3.json")
    yield "collapse.json", {"c": {x: "*" for x in z3.carrier}}
    # 1 acts as the swap 0 <-> 1 on a two-element set, which no Z/3-action allows
    broken = module_algebra(z3, ["0", "1"], {(r, x): x for r in z3.carrier for x in ["0", "1"]})
    broken.action[(Profile(("c",), "c"), "1")] = {("0",): "1", ("1",): "0"}
    yield "z3_broken.json", algebra_to_json(broken, "p_z3.json")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, doc in fixtures():
        (out / name).write_text(dump_json(doc) + "\n", encoding="utf-8")
        print(f"wrote {out / name}")


if __name__ == "__main__":
    main()
