from .base import (
    LabeledItem,
    ParagraphItem,
    Tagger,
    TaggerRequest,
    TaggerResponse,
    paragraph_items,
    paragraph_surface,
)
from .extract import (
    extract_document,
    extract_entity_sets,
    extract_highlights,
    extract_spans,
)
from .gazetteer import (
    GazetteerRule,
    GazetteerTagger,
    parse_gazetteer_config,
    render_gazetteer_config,
    rules_from_annotations,
    rules_from_templates,
)
from .remote import RemoteTagger, RemoteTrainer
from .wire import (
    label_alphabet,
    labeled_item_to_wire,
    sequences_from_response,
    tag_request_to_wire,
    tag_response_from_wire,
    train_items_from_corpus,
    train_request_to_wire,
)

__all__ = [
    "GazetteerRule",
    "GazetteerTagger",
    "LabeledItem",
    "ParagraphItem",
    "RemoteTagger",
    "RemoteTrainer",
    "Tagger",
    "TaggerRequest",
    "TaggerResponse",
    "extract_document",
    "extract_entity_sets",
    "extract_highlights",
    "extract_spans",
    "label_alphabet",
    "labeled_item_to_wire",
    "paragraph_items",
    "paragraph_surface",
    "parse_gazetteer_config",
    "render_gazetteer_config",
    "rules_from_annotations",
    "rules_from_templates",
    "sequences_from_response",
    "tag_request_to_wire",
    "tag_response_from_wire",
    "train_items_from_corpus",
    "train_request_to_wire",
]
