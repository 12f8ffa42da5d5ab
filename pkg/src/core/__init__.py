"""Web construction, coherence and evaluation."""
