"""Count-based distributional spaces and unsupervised hypernymy direction prediction."""

__version__ = "0.1.0"
