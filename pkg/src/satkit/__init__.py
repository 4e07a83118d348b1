"""Cross-source satire detection toolkit: character n-gram string kernels,
(kernel) ridge regression, similarity-feature domain adaptation, McNemar
significance testing and discriminative-feature extraction."""

__version__ = "0.1.0"
