"""Group rings over finite fields, Kaplansky-property witness searches,
first-order sentences in the language of rings, and linear cellular automata
over finite groups."""

__version__ = "0.1.0"
