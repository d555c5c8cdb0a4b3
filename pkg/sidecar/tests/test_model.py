"""Model-level checks: framing, masking, softmax, and the gradient of
the classifier head against central finite differences."""

import random

import pytest
import torch

from docelem_sidecar import (
    LabelAlphabetMismatch,
    MalformedItem,
    TaggingRuntime,
    TrainConfig,
    TrainedModel,
    UnknownEncoder,
    Vocab,
    build_model,
    frame_item,
    label_alphabet,
    masked_loss,
)
from docelem_sidecar.vocab import CLS, PAD, SEP


def test_label_alphabet_order():
    assert label_alphabet(["x", "y"]) == ["O", "B-x", "I-x", "B-y", "I-y"]


# ----------------------------------------------------------- framing ----


def _alphabet_index(elements):
    return {label: i for i, label in enumerate(label_alphabet(elements))}


def test_frame_shape_and_markers():
    vocab = Vocab(["租", "金", "9"])
    frame = frame_item(vocab, ["租金", "9"], max_len=8)
    assert frame.input_ids.shape == (8,)
    assert int(frame.input_ids[0]) == CLS
    assert int(frame.input_ids[4]) == SEP
    assert frame.input_ids[5:].tolist() == [PAD] * 3
    assert frame.pad_mask.tolist() == [False] * 5 + [True] * 3
    assert frame.first_positions == [1, 3]


def test_frame_truncates_past_the_window():
    vocab = Vocab(list("abcdefgh"))
    # window is max_len - 2 = 4 characters
    frame = frame_item(vocab, ["abc", "de", "fgh"], max_len=6)
    assert len(frame.input_ids) == 6
    assert frame.first_positions == [1, 4, -1]
    assert int(frame.input_ids[5]) == SEP


def test_frame_supervises_first_characters_only():
    vocab = Vocab(["租", "金", "9"])
    index = _alphabet_index(["rent"])
    frame = frame_item(vocab, ["租金", "9"], 8, index, ["B-rent", "I-rent"])
    assert frame.supervised.tolist() == [False, True, False, True] + [False] * 4
    assert int(frame.label_ids[1]) == index["B-rent"]
    assert int(frame.label_ids[3]) == index["I-rent"]


def test_frame_rejects_bad_items():
    vocab = Vocab(["a"])
    with pytest.raises(MalformedItem):
        frame_item(vocab, [], max_len=8)
    with pytest.raises(MalformedItem):
        frame_item(vocab, ["a", ""], max_len=8)
    with pytest.raises(MalformedItem):
        frame_item(vocab, ["a"], 8, _alphabet_index(["t"]), ["O", "O"])
    with pytest.raises(LabelAlphabetMismatch):
        frame_item(vocab, ["a"], 8, _alphabet_index(["t"]), ["B-other"])


def test_unknown_characters_map_to_unk_not_errors():
    vocab = Vocab(["a"])
    frame = frame_item(vocab, ["ab"], max_len=8)
    assert int(frame.input_ids[1]) == vocab.id_of("a")
    assert int(frame.input_ids[2]) == 1  # UNK


def test_unknown_encoder_is_rejected():
    with pytest.raises(UnknownEncoder):
        build_model("bert-base", vocab_size=10, max_len=8, n_labels=3)


# ------------------------------------------------------------ masking ----


def test_loss_is_exactly_invariant_to_labels_off_supervision():
    torch.manual_seed(0)
    vocab = Vocab(["租", "金", "9", "元"])
    index = _alphabet_index(["rent"])
    frame = frame_item(vocab, ["租金", "9", "元"], 16, index, ["O", "B-rent", "I-rent"])
    logits = torch.randn(1, 16, len(index))
    labels = frame.label_ids.unsqueeze(0)
    sup = frame.supervised.unsqueeze(0)
    base = masked_loss(logits, labels, sup)

    rng = torch.Generator().manual_seed(7)
    for _ in range(20):
        corrupted = labels.clone()
        noise = torch.randint(0, len(index), labels.shape, generator=rng)
        corrupted[~sup] = noise[~sup]
        assert float(masked_loss(logits, corrupted, sup)) == float(base)


# ------------------------------------------------------------ softmax ----


def test_probability_rows_sum_to_one():
    torch.manual_seed(1)
    vocab = Vocab(list("abcdefghij一二三四五"))
    model = build_model("tiny", len(vocab), max_len=32, n_labels=7)
    model.eval()
    rng = random.Random(5)
    frames = [
        frame_item(
            vocab,
            ["".join(rng.choice("abcdefghij一二三四五") for _ in range(rng.randint(1, 4)))
             for _ in range(rng.randint(1, 10))],
            max_len=32,
        )
        for _ in range(16)
    ]
    ids = torch.stack([f.input_ids for f in frames])
    pads = torch.stack([f.pad_mask for f in frames])
    with torch.no_grad():
        probs = model.head.probabilities(model.encoder(ids, pads))
    assert bool((probs >= 0).all())
    assert float((probs.sum(dim=-1) - 1.0).abs().max()) <= 1e-6


# ---------------------------------------------------------- gradients ----


def test_head_gradients_match_central_differences():
    """Analytic gradient of the token cross-entropy w.r.t. the head weight
    and bias, checked against central differences on a 3-token case."""
    torch.manual_seed(0)
    vocab = Vocab(["租", "金", "9"])
    alphabet = label_alphabet(["rent"])
    index = {label: i for i, label in enumerate(alphabet)}
    model = build_model("tiny", len(vocab), max_len=8, n_labels=len(alphabet), dropout=0.0)
    model = model.double().eval()

    frame = frame_item(vocab, ["租", "金", "9"], 8, index, ["B-rent", "I-rent", "O"])
    ids = frame.input_ids.unsqueeze(0)
    pads = frame.pad_mask.unsqueeze(0)
    labels = frame.label_ids.unsqueeze(0)
    sup = frame.supervised.unsqueeze(0)

    def loss_now() -> torch.Tensor:
        return masked_loss(model(ids, pads), labels, sup)

    loss_now().backward()

    h = 1e-6
    for param in (model.head.linear.weight, model.head.linear.bias):
        analytic = param.grad.clone()
        numeric = torch.zeros_like(param)
        flat, nflat = param.data.view(-1), numeric.view(-1)
        for i in range(flat.numel()):
            keep = float(flat[i])
            with torch.no_grad():
                flat[i] = keep + h
                up = float(loss_now())
                flat[i] = keep - h
                down = float(loss_now())
                flat[i] = keep
            nflat[i] = (up - down) / (2 * h)
        scale = torch.maximum(analytic.abs(), numeric.abs()).clamp_min(1e-6)
        worst = float(((analytic - numeric).abs() / scale).max())
        assert worst <= 1e-4, f"relative error {worst}"


# ---------------------------------------------------------- alignment ----


def test_fuzzed_items_get_one_label_per_token():
    """1,000 fuzzed paragraphs through an untrained runtime: the response
    always aligns one alphabet label per canonical token."""
    torch.manual_seed(2)
    pool = "租金元年月日0123456789abz一二三"
    vocab = Vocab(sorted(set(pool)))
    alphabet = label_alphabet(["who", "amt"])
    config = TrainConfig(max_len=32)
    model = build_model("tiny", len(vocab), config.max_len, len(alphabet))
    runtime = TaggingRuntime(TrainedModel(model, vocab, alphabet, config))

    rng = random.Random(9)
    items = []
    for n in range(1000):
        tokens = [
            "".join(rng.choice(pool) for _ in range(rng.randint(1, 6)))
            for _ in range(rng.randint(1, 15))
        ]
        items.append({"doc_id": f"d{n}", "paragraph_index": 0, "tokens": tokens})
    rows = runtime.tag_items(items)
    assert len(rows) == len(items)
    allowed = set(alphabet)
    for item, row in zip(items, rows):
        assert len(row) == len(item["tokens"])
        assert all(label in allowed for label in row)


def test_tokens_past_the_window_answer_o():
    torch.manual_seed(3)
    vocab = Vocab(["x"])
    alphabet = label_alphabet(["t"])
    config = TrainConfig(max_len=8)
    model = build_model("tiny", len(vocab), config.max_len, len(alphabet))
    runtime = TaggingRuntime(TrainedModel(model, vocab, alphabet, config))
    rows = runtime.tag_items(
        [{"doc_id": "d", "paragraph_index": 0, "tokens": ["xxx", "xxx", "xxx"]}]
    )
    # 9 characters against a 6-character window: the third token is out
    assert len(rows[0]) == 3
    assert rows[0][2] == "O"
