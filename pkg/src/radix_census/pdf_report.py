from __future__ import annotations

import html
import re
from datetime import datetime
from pathlib import Path

import markdown
from xhtml2pdf import pisa

_LEADING_H1 = re.compile(r"^#\s+(.+?)\s*\n", re.MULTILINE)

# Cyclotomic values render with zeta and subscript digits; the base-14 PDF
# fonts have neither glyph.
_UNICODE_FONT_CANDIDATES: tuple[tuple[Path, Path | None], ...] = (
    (
        Path("/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf"),
        Path("/usr/share/fonts/truetype/dejavu/DejaVuSans-Bold.ttf"),
    ),
    (
        Path("/usr/share/fonts/truetype/noto/NotoSans-Regular.ttf"),
        Path("/usr/share/fonts/truetype/noto/NotoSans-Bold.ttf"),
    ),
    (Path("/System/Library/Fonts/Supplemental/Arial Unicode.ttf"), None),
    (Path("/Library/Fonts/Arial Unicode.ttf"), None),
)


def _find_unicode_font() -> tuple[Path, Path | None] | None:
    for regular, bold in _UNICODE_FONT_CANDIDATES:
        if regular.is_file():
            return regular, bold if bold and bold.is_file() else None
    return None


def _build_style() -> str:
    found = _find_unicode_font()
    regular, bold = found if found else (None, None)
    body_font = "ReportBody" if regular else "Helvetica"
    rules = []
    if regular:
        rules.append(f'@font-face {{ font-family: "ReportBody"; src: url("{regular}"); }}')
        if bold:
            rules.append(f'@font-face {{ font-family: "ReportBody"; src: url("{bold}"); font-weight: bold; }}')
    heading_weight = "font-weight: bold;" if bold is not None or regular is None else ""
    font_faces = "\n".join(rules)
    return f"""
{font_faces}
@page {{
    size: a4 portrait;
    margin: 2cm 2cm 2.4cm 2cm;
    @frame footer_frame {{
        -pdf-frame-content: footer_content;
        bottom: 1cm; left: 2cm; right: 2cm; height: 1cm;
    }}
}}
body {{ font-family: "{body_font}"; font-size: 8.5pt; color: #333333; line-height: 1.45; }}
.doc-title {{ font-family: "{body_font}"; font-size: 15pt; margin: 0 0 2px 0; {heading_weight} }}
.doc-meta {{ font-size: 7.5pt; color: #6b6b6b; margin-bottom: 4px; }}
hr.top-rule {{ border: none; border-top: 1.2pt solid #333333; margin: 10px 0 16px 0; }}
h2 {{ font-family: "{body_font}"; font-size: 10pt; margin-top: 16px; {heading_weight} }}
table {{ border-collapse: collapse; margin: 6px 0; }}
th {{ text-align: left; border-bottom: 0.8pt solid #c7d0d8; padding: 2px 6px; {heading_weight} }}
td {{ padding: 2px 6px; border-bottom: 0.3pt solid #e3e7eb; }}
code {{ font-family: "{body_font}"; color: #1a5276; }}
#footer_content {{ font-size: 7.5pt; color: #8a8a8a; border-top: 0.5pt solid #c7d0d8; padding-top: 4px; }}
"""


def _extract_title(report_markdown: str, fallback: str) -> tuple[str, str]:
    stripped = report_markdown.lstrip("\n")
    match = _LEADING_H1.match(stripped)
    if match:
        return match.group(1).strip(), stripped[match.end() :].lstrip("\n")
    return fallback, report_markdown


def render_report_pdf(*, report_id: str, title: str, report_markdown: str, output_path: Path) -> Path:
    """Render a Markdown verification report as a PDF."""
    heading, body_markdown = _extract_title(report_markdown, fallback=title)
    body_html = markdown.markdown(body_markdown, extensions=["extra", "sane_lists"])
    generated_at = datetime.now().strftime("%d %B %Y, %H:%M")

    document = f"""<html>
<head><meta charset="utf-8" /><style>{_build_style()}</style></head>
<body>
<div class="doc-title">{html.escape(heading)}</div>
<div class="doc-meta">radix-census verification report &bull; Generated {generated_at} &bull; ID: {html.escape(report_id)}</div>
<hr class="top-rule" />
{body_html}
<div id="footer_content"><span>{html.escape(heading)}</span> - <span>Page <pdf:pagenumber /> of <pdf:pagecount /></span></div>
</body>
</html>"""

    output_path.parent.mkdir(parents=True, exist_ok=True)
    with output_path.open("wb") as handle:
        result = pisa.CreatePDF(document, dest=handle)
    error_count = getattr(result, "err", 0)
    if error_count:
        raise RuntimeError(f"PDF generation failed with {error_count} error(s)")
    return output_path


_SLUG_STRIP = re.compile(r"[^a-z0-9]+")


def report_pdf_filename(report_id: str, title: str) -> str:
    slug = _SLUG_STRIP.sub("-", title.strip().lower()).strip("-")[:60] or "report"
    return f"{datetime.now().strftime('%Y-%m-%d')}_{slug}_{report_id}.pdf"
