"""Knowledge base toolkit for OWL 2 functional-syntax ontologies.

Subpackages: ``ofs`` (syntax), ``corpus`` (bundled data).  Modules:
``kb``, ``reasoner``, ``sparql``, ``export``, ``cli``.
"""

__version__ = "0.1.0"
