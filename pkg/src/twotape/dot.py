"""DOT export for traces and run trees (node label ``state@i,j``)."""

from __future__ import annotations

from .engine import RunTree


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def trace_to_dot(trace, name: str = "trace", lasso_start: int | None = None) -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=box];"]
    for n, c in enumerate(trace):
        lines.append(f"  n{n} [label={_quote(c.label())}];")
    for n in range(1, len(trace)):
        lines.append(f"  n{n - 1} -> n{n};")
    if lasso_start is not None and trace:
        lines.append(f"  n{len(trace) - 1} -> n{lasso_start} [style=dashed, label=loop];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def run_tree_to_dot(tree: RunTree, universal=frozenset(), final=frozenset(), name: str = "run") -> str:
    """Shared subtrees are drawn once, so the output is the DAG of the tree."""
    ids = {}
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    for node in tree.walk():
        ids[id(node)] = f"n{len(ids)}"
        attrs = [f"label={_quote(node.config.label())}"]
        if node.config.state in universal:
            attrs.append("style=rounded")
        if node.config.state in final:
            attrs.append("peripheries=2")
        lines.append(f"  {ids[id(node)]} [{', '.join(attrs)}];")
    for node in tree.walk():
        for child in node.children:
            lines.append(f"  {ids[id(node)]} -> {ids[id(child)]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
