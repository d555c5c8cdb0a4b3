"""Template-based synthetic corpus construction.

Templates are plain text with ``{{element_id}}`` and ``{{filler:kind}}``
placeholders. Rendering replaces each placeholder with a deterministic
pseudo-random fake value and emits a gold annotation at the exact character
range of every element expansion, so ``text[start:end]`` always reproduces
the inserted value. Same inputs and seed give byte-identical corpora.
"""

import random
from typing import Mapping, Sequence

from docelem.errors import UnknownFillerKind, UnknownPlaceholder
from docelem.textprep import segment

from .types import Annotation, Corpus, Document, Schema, Template

# Embedded fake-value vocabularies. The corpora built from these are
# synthetic stand-ins for proprietary document collections; values only
# need to look plausible and be deterministic under a seed.

_NAMES = (
    "张伟", "王芳", "李娜", "刘洋", "陈静", "杨军", "赵敏", "黄磊",
    "周杰", "吴霞", "徐强", "孙丽", "马超", "朱琳", "胡斌", "郭涛",
    "何艳", "高鹏", "林芳", "郑浩", "罗静", "梁伟", "宋洁", "唐磊",
)

_COMPANIES = (
    "北京恒信科技有限公司", "上海联创贸易有限公司", "广州富华实业有限公司",
    "深圳市宏达电子有限公司", "杭州绿洲网络科技有限公司", "成都天成置业有限公司",
    "南京中恒建设集团有限公司", "武汉博远物流有限公司", "天津瑞丰投资有限公司",
    "重庆金桥房地产开发有限公司", "苏州华宇精密机械有限公司", "西安长安能源股份有限公司",
)

_ADDRESSES = (
    "北京市朝阳区建国路88号", "上海市浦东新区张杨路500号", "广州市天河区体育西路103号",
    "深圳市南山区科技园南路12号", "杭州市西湖区文三路90号", "成都市高新区天府大道北段28号",
    "南京市鼓楼区中山北路45号", "武汉市武昌区中南路99号", "天津市和平区南京路189号",
    "重庆市渝中区解放碑民族路177号", "苏州市工业园区星湖街218号", "西安市雁塔区科技路33号",
)


def _fake_name(rng: random.Random) -> str:
    return rng.choice(_NAMES)


def _fake_company(rng: random.Random) -> str:
    return rng.choice(_COMPANIES)


def _fake_address(rng: random.Random) -> str:
    base = rng.choice(_ADDRESSES)
    if rng.random() < 0.4:
        return f"{base}{rng.randint(1, 30)}栋{rng.randint(101, 2501)}室"
    return base


def _fake_money(rng: random.Random) -> str:
    style = rng.randrange(3)
    if style == 0:
        amount = rng.randrange(800, 30000, 100)
        return f"{amount}元"
    if style == 1:
        amount = rng.randrange(10, 100) * rng.choice((1000, 10000))
        return f"{amount}元（人民币）"
    return f"{rng.randint(1, 50)}万元"


def _fake_date(rng: random.Random) -> str:
    year = rng.randint(2015, 2024)
    month = rng.randint(1, 12)
    day = rng.randint(1, 28)
    return f"{year}年{month}月{day}日"


def _fake_percent(rng: random.Random) -> str:
    return f"{rng.randint(1, 9999) / 100:.2f}%"


def _fake_integer(rng: random.Random) -> str:
    value = rng.randint(1000, 999_999_999)
    return f"{value:,}" if rng.random() < 0.5 else str(value)


_FILLERS = {
    "name": _fake_name,
    "company": _fake_company,
    "address": _fake_address,
    "money": _fake_money,
    "date": _fake_date,
    "percent": _fake_percent,
    "integer": _fake_integer,
}


def fake_value(kind: str, rng: random.Random) -> str:
    try:
        filler = _FILLERS[kind]
    except KeyError:
        raise UnknownFillerKind(f"unknown filler kind {kind!r}") from None
    return filler(rng)


def render_template(
    template: Template,
    schema: Schema,
    rng: random.Random,
    element_kinds: Mapping[str, str] | None = None,
) -> tuple[str, list[tuple[int, int, str]]]:
    """Render one instance; returns (text, element spans).

    ``element_kinds`` maps element ids to filler kinds (default: name).
    """
    element_ids = set(schema.element_ids)
    kinds = element_kinds or {}
    out: list[str] = []
    spans: list[tuple[int, int, str]] = []
    cursor = 0  # offset into the rendered text
    pos = 0  # offset into the template body
    body = template.body
    for start, end, placeholder in template.placeholders():
        literal = body[pos:start]
        out.append(literal)
        cursor += len(literal)
        if placeholder.startswith("filler:"):
            value = fake_value(placeholder.removeprefix("filler:"), rng)
        else:
            if placeholder not in element_ids:
                raise UnknownPlaceholder(
                    f"template {template.template_id!r} uses {placeholder!r}, "
                    f"not an element of schema {schema.name!r}"
                )
            value = fake_value(kinds.get(placeholder, "name"), rng)
            spans.append((cursor, cursor + len(value), placeholder))
        out.append(value)
        cursor += len(value)
        pos = end
    out.append(body[pos:])
    return "".join(out), spans


def generate_synthetic_corpus(
    schema: Schema,
    templates: Sequence[Template],
    instances_per_template: int | tuple[int, int] = (1, 3),
    seed: int = 0,
    element_kinds: Mapping[str, str] | None = None,
) -> Corpus:
    """Render every template into one or more annotated documents.

    ``instances_per_template`` is either a fixed count or an inclusive
    (low, high) range sampled per template; both are bounded to 1..3
    instances, mirroring how the reference corpora were produced.
    """
    if not templates:
        raise ValueError("templates must be non-empty")
    if isinstance(instances_per_template, int):
        lo = hi = instances_per_template
    else:
        lo, hi = instances_per_template
    if not 1 <= lo <= hi <= 3:
        raise ValueError("instances_per_template must lie within 1..3")

    documents: list[Document] = []
    annotations: list[Annotation] = []
    for template in templates:
        rng = random.Random(f"{seed}|{template.template_id}")
        count = lo if lo == hi else rng.randint(lo, hi)
        for i in range(count):
            doc_id = f"{template.template_id}-{i + 1:02d}"
            text, spans = render_template(template, schema, rng, element_kinds)
            doc = Document(
                doc_id, text, tuple(segment(text)), template_id=template.template_id
            )
            for start, end, element_id in spans:
                if doc.paragraph_containing(start, end) is None:
                    raise ValueError(
                        f"template {template.template_id!r}: placeholder "
                        f"{element_id!r} expands across a paragraph boundary"
                    )
                annotations.append(Annotation(doc_id, element_id, start, end))
            documents.append(doc)
    return Corpus(schema, tuple(documents), tuple(annotations))
