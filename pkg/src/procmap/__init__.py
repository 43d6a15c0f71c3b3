"""procmap: summarize many same-goal procedural texts into a weighted graph.

The pipeline turns a corpus of recipes for one dish into a summary graph
whose START->END paths are execution plans: load -> parse -> embed ->
cluster -> build/prune graph -> serve/report.
"""

__version__ = "0.1.0"
