#!/usr/bin/env python3
"""Converts raw Cora (KONECT) and PubMed-Diabetes (LINQS) files to edge lists and labels.

usage: convert_datasets.py {cora,pubmed} RAW_DIR OUT_DIR
"""

import argparse
import pathlib
import sys


def find(raw: pathlib.Path, pattern: str) -> pathlib.Path:
    hits = sorted(raw.rglob(pattern))
    if not hits:
        sys.exit(f"no file matching {pattern} under {raw}")
    return hits[0]


def convert_cora(raw: pathlib.Path, out: pathlib.Path) -> None:
    # out.*: "src dst" rows (1-based ids) after '%' comments.
    # ent.*.class: one category per line, line i = node i.
    edges = find(raw, "out.subelj_cora*")
    classes = find(raw, "ent.subelj_cora*class*")
    with open(edges) as src, open(out / "cora.edges", "w") as dst:
        for line in src:
            if line.startswith("%") or not line.strip():
                continue
            u, v = line.split()[:2]
            dst.write(f"{u} {v}\n")
    with open(classes) as src, open(out / "cora.labels", "w") as dst:
        for i, line in enumerate(src, start=1):
            label = line.strip()
            if label:
                dst.write(f"{i} {label}\n")


def convert_pubmed(raw: pathlib.Path, out: pathlib.Path) -> None:
    # DIRECTED.cites.tab: "id<TAB>paper:A<TAB>|<TAB>paper:B" after two header lines.
    # NODE.paper.tab: "paper<TAB>label=K<TAB>features..." after two header lines.
    cites = find(raw, "*DIRECTED.cites.tab")
    nodes = find(raw, "*NODE.paper.tab")
    with open(cites) as src, open(out / "pubmed.edges", "w") as dst:
        for line in list(src)[2:]:
            fields = line.split()
            if len(fields) < 4:
                continue
            a, b = fields[1].removeprefix("paper:"), fields[3].removeprefix("paper:")
            dst.write(f"{a} {b}\n")
    with open(nodes) as src, open(out / "pubmed.labels", "w") as dst:
        for line in list(src)[2:]:
            fields = line.split("\t")
            if len(fields) < 2 or not fields[1].startswith("label="):
                continue
            dst.write(f"{fields[0]} {fields[1].removeprefix('label=')}\n")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("dataset", choices=["cora", "pubmed"])
    parser.add_argument("raw", type=pathlib.Path)
    parser.add_argument("out", type=pathlib.Path)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    {"cora": convert_cora, "pubmed": convert_pubmed}[args.dataset](args.raw, args.out)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
