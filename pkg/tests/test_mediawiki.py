import pytest

from claimlens.corpus import parse_mediawiki_xml, strip_wikitext
from claimlens.errors import CorpusParseError


def wiki_dump(*pages):
    body = "\n".join(pages)
    return f"""<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.10/">
  <siteinfo><sitename>Wikipedia</sitename></siteinfo>
  {body}
</mediawiki>""".encode("utf-8")


def page(title, text, ns="0", redirect=False):
    redirect_tag = '<redirect title="Elsewhere" />' if redirect else ""
    return f"""<page>
    <title>{title}</title>
    <ns>{ns}</ns>
    {redirect_tag}
    <revision><text>{text}</text></revision>
  </page>"""


def test_two_articles_one_redirect():
    dump = wiki_dump(
        page("Aspirin", "Aspirin is a drug."),
        page("Cats", "Cats are [[mammal]]s."),
        page("ASA", "#REDIRECT [[Aspirin]]", redirect=True),
    )
    corpus = parse_mediawiki_xml(dump)
    assert len(corpus) == 2
    assert corpus.stats.raw == 3
    assert corpus.stats.dropped == {"redirect": 1}
    assert {d.title for d in corpus} == {"Aspirin", "Cats"}
    assert corpus.source == "wikipedia"
    assert all(d.source == "wikipedia" for d in corpus)


def test_piped_link_reduced_to_display_text():
    dump = wiki_dump(page("Cats", "[[cat|Cats]] are mammals."))
    corpus = parse_mediawiki_xml(dump)
    assert corpus.documents[0].body == "Cats are mammals."


def test_empty_text_page_dropped_and_counted():
    dump = wiki_dump(page("Empty", ""), page("Kept", "Some text."))
    corpus = parse_mediawiki_xml(dump)
    assert len(corpus) == 1
    assert corpus.stats.dropped == {"empty_body": 1}


def test_non_main_namespace_skipped():
    dump = wiki_dump(
        page("Talk:Aspirin", "Discussion.", ns="1"),
        page("Aspirin", "Aspirin is a drug."),
    )
    corpus = parse_mediawiki_xml(dump)
    assert [d.title for d in corpus] == ["Aspirin"]
    assert corpus.stats.dropped == {"non_main_namespace": 1}


def test_malformed_xml_reports_position():
    with pytest.raises(CorpusParseError, match="line"):
        parse_mediawiki_xml(b"<mediawiki><page><title>Broken</mediawiki>")


class TestStripWikitext:
    def test_plain_link(self):
        assert strip_wikitext("[[cat]]s are mammals.") == "cats are mammals."

    def test_piped_link(self):
        assert strip_wikitext("[[cat|Cats]] are mammals.") == "Cats are mammals."

    def test_templates_removed_to_fixpoint(self):
        text = "Start {{infobox|a={{nested|b}}|c}} end."
        assert strip_wikitext(text) == "Start end."

    def test_ref_blocks_removed(self):
        text = 'Claim<ref name="x">Source</ref> stands. Self-closing<ref name="y" /> too.'
        assert strip_wikitext(text) == "Claim stands. Self-closing too."

    def test_file_links_removed(self):
        text = "[[File:Photo.jpg|thumb|A [[cat]] photo]]Cats purr."
        assert strip_wikitext(text) == "Cats purr."

    def test_heading_markers_dropped(self):
        text = "== History ==\nIt began."
        assert strip_wikitext(text) == "History\nIt began."

    def test_bold_italic_quotes_dropped(self):
        assert strip_wikitext("'''Aspirin''' is ''useful''.") == "Aspirin is useful."

    def test_comments_removed(self):
        assert strip_wikitext("Visible<!-- hidden --> text.") == "Visible text."

    def test_external_link_display_text(self):
        assert strip_wikitext("See [https://example.org the site] now.") == "See the site now."
