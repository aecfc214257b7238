"""Exact-arithmetic engine for holonomic functions.

Derives holonomic differential/recurrence equations from closed-form
expressions, performs Gosper/Zeilberger hypergeometric summation with
certificates, computes left Groebner bases in Ore/Weyl algebras with
elimination-based creative telescoping, factors operators to reach
lowest-order normal forms, and proves identities from a common equation
plus initial values.
"""

__version__ = "0.1.0"
