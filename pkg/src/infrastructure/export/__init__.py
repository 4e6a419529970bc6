from .exporters import ExportFormat, export_tree, to_csv_links, to_dot, to_markdown

__all__ = ["ExportFormat", "export_tree", "to_csv_links", "to_dot", "to_markdown"]
