"""Python host library for programs emitted by mglite.

One module per binding path used in `external Python <path>` blocks. Every
module exposes `instantiate(ops)`, which takes the program operations the
module requires (by their local names) and returns an instance whose
attributes are the bound operations and whose `types` maps each host type
to its hooks.

Calling convention: functions and predicates return their value;
procedures take every parameter (`out` ones as None) and return the tuple
of their upd/out values in declaration order.
"""
