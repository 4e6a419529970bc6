"""
Tree exporters: markdown, Graphviz DOT, CSV links
"""
import csv
import io
import logging
from enum import Enum
from typing import Callable, Dict

import pydot

from ...domain.entities import ArtifactTree
from ...domain.exceptions import ArgumentError

logger = logging.getLogger(__name__)

MAX_LABEL = 48


class ExportFormat(str, Enum):
    """Supported export formats"""
    MARKDOWN = "markdown"
    DOT = "dot"
    CSV_LINKS = "csv-links"

    @classmethod
    def parse(cls, value: str) -> "ExportFormat":
        try:
            return cls(value)
        except ValueError as e:
            known = ", ".join(f.value for f in cls)
            raise ArgumentError(
                f"Unknown export format '{value}' (expected one of: {known})"
            ) from e


def to_markdown(tree: ArtifactTree) -> str:
    """One heading per artifact, top layer first; deeper layers get deeper headings"""
    index = tree.artifact_index()
    top = max((layer.index for layer in tree.layers), default=0)
    lines = [f"_Project: {tree.project_name}_", ""]
    for layer in sorted(tree.layers, key=lambda layer: -layer.index):
        level = min(6, top - layer.index + 1)
        for artifact in layer.artifacts:
            lines.append(f'<a id="{artifact.id}"></a>')
            lines.append(f"{'#' * level} {artifact.title or artifact.id}")
            lines.append("")
            lines.append(f"*{artifact.artifact_type}* `{artifact.id}`")
            if artifact.source_path:
                lines.append(f"Source: `{artifact.source_path}`")
            lines.append("")
            lines.append(artifact.body)
            lines.append("")
            children = tree.children_of(artifact.id)
            if children:
                lines.append("Children:")
                for child_id in children:
                    child = index.get(child_id)
                    title = child.title if child is not None else child_id
                    lines.append(f"- [{title}](#{child_id})")
                lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def _label(text: str) -> str:
    clean = " ".join(text.replace('"', "'").replace("\\", "/").split())
    if len(clean) > MAX_LABEL:
        clean = clean[: MAX_LABEL - 3] + "..."
    return f'"{clean}"'


def _node_name(artifact_id: str) -> str:
    return f"a_{artifact_id}"


def to_dot(tree: ArtifactTree) -> str:
    """Directed graph, one rank per layer, edges parent -> child"""
    graph = pydot.Dot("artifact_tree", graph_type="digraph", rankdir="TB")
    for layer in tree.layers:
        subgraph = pydot.Subgraph(f"layer_{layer.index}", rank="same")
        for artifact in layer.artifacts:
            subgraph.add_node(
                pydot.Node(
                    _node_name(artifact.id),
                    label=_label(artifact.title or artifact.id),
                    shape="box",
                )
            )
        graph.add_subgraph(subgraph)
    for link in tree.links:
        graph.add_edge(
            pydot.Edge(
                _node_name(link.parent_id),
                _node_name(link.child_id),
                label=f'"{link.score:.3f}"',
            )
        )
    return graph.to_string()


def to_csv_links(tree: ArtifactTree) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["parent", "child", "score"])
    for link in tree.links:
        writer.writerow([link.parent_id, link.child_id, f"{link.score:.6f}"])
    return buffer.getvalue()


EXPORTERS: Dict[ExportFormat, Callable[[ArtifactTree], str]] = {
    ExportFormat.MARKDOWN: to_markdown,
    ExportFormat.DOT: to_dot,
    ExportFormat.CSV_LINKS: to_csv_links,
}


def export_tree(tree: ArtifactTree, export_format: str) -> bytes:
    """Render tree in the requested format"""
    fmt = ExportFormat.parse(export_format)
    return EXPORTERS[fmt](tree).encode("utf-8")
