"""Write the JSON presentations under data/ from the built-in presets."""

import argparse
from pathlib import Path

from szczarba import presets
from szczarba.presentation import bundle_doc, dumps


def corrupted_delta3():
    doc = bundle_doc(presets.loop_bundle(presets.collapsed_simplex(3, 0)), truncation=5)
    doc["name"] = doc["group"]["loopgroup_of"]
    # an inverted top value breaks the ∂_0 identity of the twisting function
    doc["twist"]["x0123"] = "x0123~^-1"
    return doc


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=Path(__file__).resolve().parent.parent / "data", type=Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    docs = {
        "sphere2": bundle_doc(presets.loop_bundle(presets.minimal_sphere(2)), truncation=5),
        "cover": bundle_doc(presets.double_cover()),
        "trivial-bundle": bundle_doc(presets.trivial_bundle()),
        "delta3": bundle_doc(presets.loop_bundle(presets.collapsed_simplex(3, 0)), truncation=5),
        "delta4": bundle_doc(presets.loop_bundle(presets.collapsed_simplex(4, 0)), truncation=5),
        "delta5-sk1": bundle_doc(presets.loop_bundle(presets.collapsed_simplex(5, 1)), truncation=5),
        "random1": bundle_doc(presets.loop_bundle(presets.random_one_reduced(1)), truncation=5),
        "delta3-corrupt": corrupted_delta3(),
    }
    for name, doc in docs.items():
        path = args.out / f"{name}.json"
        path.write_text(dumps(doc))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
