"""Interactive concept mining over personal mail, calendar and bookmark data.

Crawl a personal information sphere, extract and rank candidate terms,
triage them into typed concepts with live coverage feedback, and export
the result as a small knowledge graph.
"""

__version__ = "0.1.0"
