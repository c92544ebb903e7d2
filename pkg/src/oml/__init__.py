"""Computing with two-variable expressions in orthomodular lattices.

Subpackages:

* ``expr``     -- expression grammar, printer, expansion to primitives
* ``freeoml``  -- the 96-element free OML on two generators; canonical forms
* ``models``   -- finite ortholattice models, Greechie diagram pasting
* ``checker``  -- exhaustive equation / Horn condition checking on models
* ``search``   -- expression enumeration and minimal-expression search
* ``catalog``  -- corpus of known lattice laws with expected verdicts
* ``cli``      -- the ``oml`` command line tool
"""

__version__ = "0.1.0"
