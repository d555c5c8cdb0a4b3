"""Built-in demo domains: lease contracts and share-pledge filings.

Desk-scale corpora need more distinct templates than anyone wants to write
by hand, so each domain composes templates from clause banks under a seed.
Clause wording is chosen so every placeholder has a literal context that is
unambiguous across the whole bank (the pattern tagger depends on that), and
so the same context never introduces two different element types.
"""

import random

from docelem.corpus import ElementType, Schema, Template
from docelem.normalize import LeaseRoles, TypingRules

# ---------------------------------------------------------------- lease ----

_LEASE_TITLES = (
    "房屋租赁合同",
    "厂房租赁协议",
    "商铺租赁合同",
    "办公用房租赁合同",
    "仓库租赁协议书",
    "住宅租赁合同",
)

_LEASE_PARTY_CLAUSES = (
    "出租方（甲方）：{{lessor}}\n承租方（乙方）：{{lessee}}",
    "甲方（出租方）：{{lessor}}\n乙方（承租方）：{{lessee}}",
    "出租人：{{lessor}}，承租人：{{lessee}}。",
    "本合同由{{lessor}}（甲方）与{{lessee}}（乙方）签订。",
    "甲方：{{lessor}}\n乙方：{{lessee}}",
)

_LEASE_PREMISES_CLAUSES = (
    "一、甲方将位于{{premises}}的房屋出租给乙方使用。",
    "一、租赁物业坐落于{{premises}}。",
    "一、甲方同意将{{premises}}的物业租赁给乙方。",
    "一、租赁房屋地址：{{premises}}。",
)

_LEASE_TERM_CLAUSES = (
    "二、租赁期自{{start_date}}起，至{{end_date}}止。",
    "二、租赁期限为{{start_date}}到{{end_date}}。",
    "二、本合同有效期自{{start_date}}开始，至{{end_date}}终止。",
    "二、租期自{{start_date}}起至{{end_date}}届满。",
)

_LEASE_RENT_CLAUSES = (
    "三、合同有效年度租金共计为{{rent}}。",
    "三、年租金为{{rent}}，按年支付。",
    "三、双方商定年租金{{rent}}，先付后用。",
    "三、租金总额：{{rent}}。",
)

_LEASE_EXTRA_CLAUSES = (
    "四、押金为{{filler:money}}，合同期满无息退还。",
    "四、本合同一式{{filler:integer}}份，自双方签字之日起生效。",
    "四、签订地点：{{filler:address}}。",
    "四、如有争议，双方协商解决。",
)


def lease_schema() -> Schema:
    return Schema(
        "lease",
        (
            ElementType("lessor", "出租方", "party letting the premises"),
            ElementType("lessee", "承租方", "party renting the premises"),
            ElementType("premises", "租赁房屋", "address of the leased premises"),
            ElementType("start_date", "起始日期", "lease start date"),
            ElementType("end_date", "终止日期", "lease end date"),
            ElementType("rent", "租金", "periodic rent amount"),
            ElementType("lease_term", "租赁期限", "duration; derived when absent"),
        ),
    )


def lease_element_kinds() -> dict[str, str]:
    return {
        "lessor": "company",
        "lessee": "name",
        "premises": "address",
        "start_date": "date",
        "end_date": "date",
        "rent": "money",
    }


def lease_typing_rules() -> TypingRules:
    return TypingRules(
        kinds={
            "start_date": "date",
            "end_date": "date",
            "rent": "number",
            "lessor": "text",
            "lessee": "text",
            "premises": "text",
            "lease_term": "text",
        },
        lease_roles=LeaseRoles("start_date", "end_date", "lease_term"),
    )


def _compose(rng: random.Random, banks: tuple[tuple[str, ...], ...],
             extras: tuple[str, ...], max_extras: int) -> str:
    lines = [rng.choice(bank) for bank in banks]
    chosen = rng.sample(extras, rng.randint(0, max_extras))
    return "\n".join(lines + chosen)


def lease_templates(count: int, seed: int = 0) -> list[Template]:
    """*count* distinct lease templates composed from the clause banks."""
    banks = (
        _LEASE_TITLES,
        _LEASE_PARTY_CLAUSES,
        _LEASE_PREMISES_CLAUSES,
        _LEASE_TERM_CLAUSES,
        _LEASE_RENT_CLAUSES,
    )
    templates: list[Template] = []
    seen: set[str] = set()
    attempt = 0
    while len(templates) < count:
        rng = random.Random(f"{seed}|lease|{attempt}")
        attempt += 1
        if attempt > count * 50:
            raise ValueError(f"clause banks cannot yield {count} distinct templates")
        body = _compose(rng, banks, _LEASE_EXTRA_CLAUSES, max_extras=2)
        if body in seen:
            continue
        seen.add(body)
        templates.append(Template(f"lease-{len(templates):03d}", body))
    return templates


# -------------------------------------------------------------- filings ----

_FILING_TITLES = (
    "{{listed_company}}关于控股股东部分股份质押的公告",
    "{{listed_company}}股份质押公告",
    "{{listed_company}}关于股东股权质押的提示性公告",
)

_FILING_PARTY_CLAUSES = (
    "出质人：{{pledgor}}，质权人：{{pledgee}}。",
    "{{pledgor}}将其持有的本公司部分股份质押给{{pledgee}}。",
    "公司股东{{pledgor}}向{{pledgee}}办理了股份质押登记手续。",
)

_FILING_SHARES_CLAUSES = (
    "本次质押股份数量为{{shares_pledged}}股。",
    "质押股份共计{{shares_pledged}}股。",
    "本次质押{{shares_pledged}}股，占其所持股份的{{filler:percent}}。",
)

_FILING_RATIO_CLAUSES = (
    "占公司总股本的{{share_ratio}}。",
    "质押股份占总股本比例为{{share_ratio}}。",
)

_FILING_DATE_CLAUSES = (
    "质押期限自{{pledge_start}}起至{{pledge_end}}止。",
    "质押登记日为{{pledge_start}}，质押到期日为{{pledge_end}}。",
    "质押开始日期：{{pledge_start}}；解除日期：{{pledge_end}}。",
)

_FILING_EXTRA_CLAUSES = (
    "公司将持续关注后续进展，并及时履行信息披露义务。",
    "质押融资金额为{{filler:money}}。",
    "公告编号：{{filler:integer}}。",
)


def filing_schema() -> Schema:
    return Schema(
        "filing",
        (
            ElementType("listed_company", "上市公司", "issuer making the filing"),
            ElementType("pledgor", "出质人", "shareholder pledging shares"),
            ElementType("pledgee", "质权人", "party receiving the pledge"),
            ElementType("shares_pledged", "质押股数", "number of pledged shares"),
            ElementType("share_ratio", "占总股本比例", "pledged fraction of all shares"),
            ElementType("pledge_start", "质押起始日", "pledge start date"),
            ElementType("pledge_end", "质押到期日", "pledge end date"),
        ),
    )


def filing_element_kinds() -> dict[str, str]:
    return {
        "listed_company": "company",
        "pledgor": "company",
        "pledgee": "company",
        "shares_pledged": "integer",
        "share_ratio": "percent",
        "pledge_start": "date",
        "pledge_end": "date",
    }


def filing_typing_rules() -> TypingRules:
    return TypingRules(
        kinds={
            "listed_company": "text",
            "pledgor": "text",
            "pledgee": "text",
            "shares_pledged": "number",
            "share_ratio": "percent",
            "pledge_start": "date",
            "pledge_end": "date",
        }
    )


def filing_templates(count: int, seed: int = 0) -> list[Template]:
    """*count* distinct share-pledge filing templates."""
    banks = (
        _FILING_TITLES,
        _FILING_PARTY_CLAUSES,
        _FILING_SHARES_CLAUSES,
        _FILING_RATIO_CLAUSES,
        _FILING_DATE_CLAUSES,
    )
    templates: list[Template] = []
    seen: set[str] = set()
    attempt = 0
    while len(templates) < count:
        rng = random.Random(f"{seed}|filing|{attempt}")
        attempt += 1
        if attempt > count * 50:
            raise ValueError(f"clause banks cannot yield {count} distinct templates")
        body = _compose(rng, banks, _FILING_EXTRA_CLAUSES, max_extras=2)
        if body in seen:
            continue
        seen.add(body)
        templates.append(Template(f"filing-{len(templates):03d}", body))
    return templates


DOMAINS = ("lease", "filing")


def domain_parts(domain: str, template_count: int, seed: int = 0):
    """(schema, templates, element_kinds, typing_rules) for a demo domain."""
    if domain == "lease":
        return (
            lease_schema(),
            lease_templates(template_count, seed),
            lease_element_kinds(),
            lease_typing_rules(),
        )
    if domain == "filing":
        return (
            filing_schema(),
            filing_templates(template_count, seed),
            filing_element_kinds(),
            filing_typing_rules(),
        )
    raise ValueError(f"unknown demo domain {domain!r}; pick from {DOMAINS}")
