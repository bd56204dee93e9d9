"""
Parsing knowledge-source dumps into a canonical corpus
======================================================

Every downstream stage (indexing, retrieval, evidence selection) reads one
format: JSONL of document records. The importers below turn raw dump formats
into it and the filter pass removes documents that cannot serve as evidence.
"""

from claimlens.corpus import (
    apply_filters,
    dumps_jsonl,
    parse_jsonl,
    parse_medline_xml,
    parse_mediawiki_xml,
    segment_sentences,
)

# A miniature MEDLINE citation file: two citations, one of them German.
medline_xml = b"""<?xml version="1.0"?>
<PubmedArticleSet>
  <PubmedArticle><MedlineCitation>
    <PMID>1001</PMID>
    <Article>
      <ArticleTitle>Aspirin and cardiovascular outcomes</ArticleTitle>
      <Abstract>
        <AbstractText>Background: aspirin is widely used.</AbstractText>
        <AbstractText>Results: risk fell by 12%.</AbstractText>
      </Abstract>
      <Language>eng</Language>
    </Article>
  </MedlineCitation></PubmedArticle>
  <PubmedArticle><MedlineCitation>
    <PMID>1002</PMID>
    <Article>
      <ArticleTitle>Eine deutsche Studie</ArticleTitle>
      <Abstract><AbstractText>Ergebnisse auf Deutsch.</AbstractText></Abstract>
      <Language>ger</Language>
    </Article>
  </MedlineCitation></PubmedArticle>
</PubmedArticleSet>"""

corpus = parse_medline_xml(medline_xml)
print("parsed MEDLINE:", corpus.stats.to_dict())
for doc in corpus:
    print(f"  {doc.doc_id} [{doc.language}] {doc.title!r}")

# Standard cleanup for abstract corpora: non-English entries, missing
# abstracts, and abstracts cut off mid-sentence all go.
filtered = apply_filters(corpus, ["non_english", "no_abstract", "unfinished_abstract"])
print("after filters:", filtered.stats.to_dict())

# Wikipedia ships as MediaWiki XML with wikitext markup; the importer strips
# templates, ref tags and link syntax down to visible text.
wiki_xml = b"""<mediawiki>
  <page>
    <title>Aspirin</title>
    <ns>0</ns>
    <revision><text>{{Infobox drug|name=Aspirin}}'''Aspirin''' is a
[[nonsteroidal anti-inflammatory drug|NSAID]].&lt;ref&gt;Cite.&lt;/ref&gt; It reduces
[[fever]] and pain.</text></revision>
  </page>
  <page>
    <title>ASA</title>
    <ns>0</ns>
    <redirect title="Aspirin" />
    <revision><text>#REDIRECT [[Aspirin]]</text></revision>
  </page>
</mediawiki>"""

wiki = parse_mediawiki_xml(wiki_xml)
print("\nparsed Wikipedia:", wiki.stats.to_dict())
print("plaintext body:", wiki.documents[0].body)

# Canonical JSONL round-trips losslessly, so corpora can be stored, shipped
# and re-read without touching the XML again.
serialized = dumps_jsonl(filtered)
print("\ncanonical JSONL:")
print(serialized.strip())
assert parse_jsonl(serialized.encode()).documents == filtered.documents

# Sentence segmentation is abbreviation-aware and deterministic; evidence
# selection later works on these units.
for sentence in segment_sentences(filtered.documents[0]):
    print(f"sentence[{sentence.index}]: {sentence.text}")
