"""Small helpers for emitting Graphviz DOT text."""

from __future__ import annotations


def dot_escape(text: str) -> str:
    # Quotes must be escaped; backslashes stay as-is so "\n" keeps working
    # as a label line break.
    return text.replace('"', '\\"')


def dot_node(node_id: str, **attrs: str) -> str:
    rendered = ", ".join(f'{key}="{dot_escape(value)}"' for key, value in attrs.items())
    return f'"{dot_escape(node_id)}" [{rendered}];' if rendered else f'"{dot_escape(node_id)}";'


def dot_edge(source: str, target: str, **attrs: str) -> str:
    line = f'"{dot_escape(source)}" -> "{dot_escape(target)}"'
    if attrs:
        rendered = ", ".join(f'{key}="{dot_escape(value)}"' for key, value in attrs.items())
        line += f" [{rendered}]"
    return line + ";"
