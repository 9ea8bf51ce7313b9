#!/usr/bin/env python3
"""Convert the Topology Zoo node-link JSON files shipped in the `topohub`
wheel into minimal GraphML files (undirected, one <edge> per link).

Usage: topohub_to_graphml.py <topohub/data/topozoo dir> <output dir>
"""
import json
import os
import sys
from xml.sax.saxutils import escape, quoteattr


def convert(src, dst):
    with open(src) as f:
        topo = json.load(f)
    name = topo.get("graph", {}).get("name", os.path.splitext(os.path.basename(src))[0])
    lines = [
        '<?xml version="1.0" encoding="utf-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key attr.name="label" attr.type="string" for="node" id="d0" />',
        '  <key attr.name="Network" attr.type="string" for="graph" id="d1" />',
        '  <graph edgedefault="undirected">',
        f'    <data key="d1">{escape(name)}</data>',
    ]
    for node in topo["nodes"]:
        lines.append(f'    <node id={quoteattr(str(node["id"]))}>'
                     f'<data key="d0">{escape(str(node.get("name", node["id"])))}</data></node>')
    for edge in topo["edges"]:
        lines.append(f'    <edge source={quoteattr(str(edge["source"]))} '
                     f'target={quoteattr(str(edge["target"]))} />')
    lines += ['  </graph>', '</graphml>', '']
    with open(dst, "w") as f:
        f.write("\n".join(lines))


def main():
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 1
    src_dir, out_dir = sys.argv[1:]
    os.makedirs(out_dir, exist_ok=True)
    for entry in sorted(os.listdir(src_dir)):
        if entry.endswith(".json"):
            convert(os.path.join(src_dir, entry),
                    os.path.join(out_dir, entry[:-5] + ".graphml"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
