from .model import EditionId, Page, Paragraph
from .normalize import load_replacement_table, normalize_text
from .parse import parse_page
from .store import PageStore, StoreRecord

__all__ = [
    "EditionId",
    "Page",
    "Paragraph",
    "PageStore",
    "StoreRecord",
    "load_replacement_table",
    "normalize_text",
    "parse_page",
]
