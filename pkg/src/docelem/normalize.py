"""Rule-based canonicalization of extracted strings.

Dates, numbers written as Arabic digits with Chinese magnitude suffixes,
and percents are rewritten to canonical values; lease terms are derived
from start/end dates. All numeric work uses ``decimal.Decimal`` so that
financial values round-trip exactly. A value whose rewrite cannot complete
is never passed through half-rewritten: it is either reported as a
``PartialFailure`` marker or logged and dropped by ``postprocess``.
"""

import datetime
import re
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Iterable

from docelem.errors import (
    EndBeforeStart,
    InvalidCalendarDate,
    UnparseableDate,
    UnparseableNumber,
)

# Full-width digits and punctuation show up verbatim in filings.
_WIDTH_TRANSLATION = str.maketrans(
    "０１２３４５６７８９．，％－／",
    "0123456789.,%-/",
)

# Magnitude suffixes; compositions (万亿, 十万...) sum the exponents.
_MAGNITUDES = {"十": 1, "百": 2, "千": 3, "万": 4, "亿": 8}

_UNITS = {"元": "CNY", "股": "shares"}

# Tolerated decoration after 元, e.g. "160000元（人民币）".
_CURRENCY_TAILS = ("（人民币）", "(人民币)", "人民币")

MIN_YEAR, MAX_YEAR = 1900, 2100


def _clean(s: str) -> str:
    s = s.translate(_WIDTH_TRANSLATION)
    return "".join(ch for ch in s if not ch.isspace())


@dataclass(frozen=True)
class CanonicalDate:
    year: int
    month: int
    day: int

    def __post_init__(self):
        try:
            datetime.date(self.year, self.month, self.day)
        except ValueError as exc:
            raise InvalidCalendarDate(
                f"{self.year}-{self.month}-{self.day}: {exc}"
            ) from None
        if not MIN_YEAR <= self.year <= MAX_YEAR:
            raise InvalidCalendarDate(f"year {self.year} outside {MIN_YEAR}..{MAX_YEAR}")

    def iso(self) -> str:
        return f"{self.year:04d}-{self.month:02d}-{self.day:02d}"

    def as_date(self) -> datetime.date:
        return datetime.date(self.year, self.month, self.day)


@dataclass(frozen=True)
class CanonicalNumber:
    value: Decimal
    unit: str | None = None

    def render(self) -> str:
        text = decimal_str(self.value)
        return f"{text} {self.unit}" if self.unit else text


@dataclass(frozen=True)
class PartialFailure:
    """A rewrite that found a numeric core but could not consume the rest."""

    original: str
    reason: str


@dataclass(frozen=True)
class LeaseTerm:
    years: int
    months: int
    days: int

    def __post_init__(self):
        if self.years < 0 or not 0 <= self.months < 12 or not 0 <= self.days <= 30:
            raise ValueError(f"not canonical mixed radix: {self!r}")

    def render(self) -> str:
        parts = []
        if self.years:
            parts.append(f"{self.years}y")
        if self.months:
            parts.append(f"{self.months}m")
        if self.days:
            parts.append(f"{self.days}d")
        return "".join(parts) or "0d"


def decimal_str(value: Decimal) -> str:
    """Plain decimal text: no exponent, no spurious trailing zeros."""
    text = format(value, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


_DATE_PATTERNS = (
    re.compile(r"(\d{4})年(\d{1,2})月(\d{1,2})日?"),
    re.compile(r"(\d{4})-(\d{1,2})-(\d{1,2})"),
    re.compile(r"(\d{4})/(\d{1,2})/(\d{1,2})"),
    re.compile(r"(\d{4})\.(\d{1,2})\.(\d{1,2})"),
)


def parse_date(s: str) -> CanonicalDate:
    cleaned = _clean(s)
    for pattern in _DATE_PATTERNS:
        m = pattern.fullmatch(cleaned)
        if m:
            return CanonicalDate(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    raise UnparseableDate(f"no date pattern matches {s!r}")


# Mantissa: plain digits or strict 3-digit grouping, optional fraction.
_MANTISSA_RE = re.compile(r"-?(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?")


def _parse_core(s: str) -> tuple[CanonicalNumber, bool] | PartialFailure:
    """Returns (number, saw_percent) or a PartialFailure marker."""
    cleaned = _clean(s)
    if not any(ch.isdigit() for ch in cleaned):
        raise UnparseableNumber(f"no digits in {s!r}")
    m = _MANTISSA_RE.match(cleaned)
    if not m:
        return PartialFailure(s, "digits present but no leading numeric core")
    value = Decimal(m.group(0).replace(",", ""))
    rest = cleaned[m.end():]

    exponent = 0
    while rest and rest[0] in _MAGNITUDES:
        exponent += _MAGNITUDES[rest[0]]
        rest = rest[1:]
    if exponent:
        value *= Decimal(10) ** exponent

    unit = None
    saw_percent = False
    if rest.startswith("%"):
        value *= Decimal("0.01")
        saw_percent = True
        rest = rest[1:]
    elif rest and rest[0] in _UNITS:
        unit = _UNITS[rest[0]]
        rest = rest[1:]
        if unit == "CNY":
            for tail in _CURRENCY_TAILS:
                if rest.startswith(tail):
                    rest = rest[len(tail):]
                    break
    if rest:
        return PartialFailure(s, f"unconsumed suffix {rest!r}")
    return CanonicalNumber(value, unit), saw_percent


def parse_number(s: str) -> CanonicalNumber | PartialFailure:
    """Exact-decimal number rewrite.

    Raises UnparseableNumber when there is no numeric core at all; returns
    a PartialFailure marker when digits are present but the string cannot
    be fully consumed. Callers must discard markers, never render them.
    """
    core = _parse_core(s)
    if isinstance(core, PartialFailure):
        return core
    return core[0]


def parse_percent(s: str) -> CanonicalNumber:
    """"X%" or "X％" as an exact ratio: 35.05% → 0.3505."""
    core = _parse_core(s)
    if isinstance(core, PartialFailure):
        raise UnparseableNumber(f"{s!r}: {core.reason}")
    number, saw_percent = core
    if not saw_percent:
        raise UnparseableNumber(f"no percent sign in {s!r}")
    return number


def _days_in_month(year: int, month: int) -> int:
    if month == 12:
        return 31
    return (datetime.date(year, month + 1, 1) - datetime.timedelta(days=1)).day


def _add_months(d: datetime.date, k: int) -> datetime.date:
    carry, month0 = divmod(d.month - 1 + k, 12)
    year, month = d.year + carry, month0 + 1
    return datetime.date(year, month, min(d.day, _days_in_month(year, month)))


def derive_lease_term(start: CanonicalDate, end: CanonicalDate) -> LeaseTerm:
    """Calendar difference from start to the day after end.

    Lease periods are inclusive of the end date, so Jan 1 2019 through
    Dec 31 2020 is exactly 2 years. Months are counted first (day-of-month
    clamped at short months), remaining days after that.
    """
    first = start.as_date()
    last = end.as_date()
    if last < first:
        raise EndBeforeStart(f"{end.iso()} before {start.iso()}")
    target = last + datetime.timedelta(days=1)

    months = (target.year - first.year) * 12 + (target.month - first.month)
    while _add_months(first, months) > target:
        months -= 1
    while _add_months(first, months + 1) <= target:
        months += 1
    days = (target - _add_months(first, months)).days
    years, months = divmod(months, 12)
    return LeaseTerm(years, months, days)


_KINDS = ("date", "number", "percent", "text")


@dataclass(frozen=True)
class LeaseRoles:
    """Element ids that play the start-date / end-date / term roles."""

    start: str
    end: str
    term: str


@dataclass(frozen=True)
class TypingRules:
    kinds: dict[str, str]
    lease_roles: LeaseRoles | None = None

    def __post_init__(self):
        bad = {k: v for k, v in self.kinds.items() if v not in _KINDS}
        if bad:
            raise ValueError(f"unknown value kinds: {bad}")

    def kind_of(self, element_type_id: str) -> str:
        return self.kinds.get(element_type_id, "text")


@dataclass(frozen=True)
class NormalizedValue:
    element_type_id: str
    raw: str
    rendered: str
    derived: bool = False


@dataclass(frozen=True)
class DiscardRecord:
    element_type_id: str
    raw: str
    reason: str


@dataclass
class NormalizedRecord:
    values: dict[str, list[NormalizedValue]] = field(default_factory=dict)
    discards: list[DiscardRecord] = field(default_factory=list)

    def add(self, value: NormalizedValue) -> None:
        self.values.setdefault(value.element_type_id, []).append(value)

    def as_json_dict(self) -> dict:
        return {
            "values": {
                etype: [
                    {"raw": v.raw, "value": v.rendered, "derived": v.derived}
                    for v in values
                ]
                for etype, values in self.values.items()
            },
            "discards": [
                {"element_type_id": d.element_type_id, "raw": d.raw, "reason": d.reason}
                for d in self.discards
            ],
        }


def postprocess(
    entities: Iterable[tuple[str, str]],
    rules: TypingRules,
) -> NormalizedRecord:
    """Normalize an extracted entity set under per-type rules.

    Parser failures become discard-log entries, never half-rewritten
    output. When lease roles are configured and the term element is absent
    but both boundary dates parsed, the term is derived and marked so.
    """
    record = NormalizedRecord()
    parsed_dates: dict[str, list[CanonicalDate]] = {}

    for etype, raw in sorted(set(entities)):
        kind = rules.kind_of(etype)
        if kind == "text":
            record.add(NormalizedValue(etype, raw, raw.strip()))
            continue
        try:
            if kind == "date":
                date = parse_date(raw)
                parsed_dates.setdefault(etype, []).append(date)
                record.add(NormalizedValue(etype, raw, date.iso()))
            elif kind == "number":
                number = parse_number(raw)
                if isinstance(number, PartialFailure):
                    record.discards.append(DiscardRecord(etype, raw, number.reason))
                else:
                    record.add(NormalizedValue(etype, raw, number.render()))
            elif kind == "percent":
                record.add(NormalizedValue(etype, raw, parse_percent(raw).render()))
        except (UnparseableDate, InvalidCalendarDate, UnparseableNumber) as exc:
            record.discards.append(DiscardRecord(etype, raw, str(exc)))

    roles = rules.lease_roles
    if roles is not None and roles.term not in record.values:
        starts = parsed_dates.get(roles.start, [])
        ends = parsed_dates.get(roles.end, [])
        if starts and ends:
            try:
                term = derive_lease_term(starts[0], ends[0])
            except EndBeforeStart as exc:
                record.discards.append(DiscardRecord(roles.term, "", str(exc)))
            else:
                record.add(NormalizedValue(roles.term, "", term.render(), derived=True))
    return record
