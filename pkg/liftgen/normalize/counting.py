from ..fol.syntax import (
    And, Atom, BOT, Cardinality, CountingExists, Exists, Forall, Formula, Iff,
    Implies, Not, Or, TOP, Truth, disjunction, simplify,
)


def _rebuild(f: Formula, rewrite) -> Formula:
    if isinstance(f, (Atom, Truth, Cardinality)):
        return f
    if isinstance(f, Not):
        return Not(rewrite(f.arg))
    if isinstance(f, And):
        return And(tuple(rewrite(a) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(rewrite(a) for a in f.args))
    if isinstance(f, Implies):
        return Implies(rewrite(f.left), rewrite(f.right))
    if isinstance(f, Iff):
        return Iff(rewrite(f.left), rewrite(f.right))
    if isinstance(f, Forall):
        return Forall(f.var, rewrite(f.body))
    if isinstance(f, Exists):
        return Exists(f.var, rewrite(f.body))
    return CountingExists(f.var, f.op, f.k, rewrite(f.body))


def expand_counting(sentence: Formula, domain_size: int) -> Formula:
    """Rewrites every counting quantifier into exact ones (=k):

    * ``exists[>=k]`` becomes the negation of ``exists[<=k-1]``
    * ``exists[<=k]`` becomes the disjunction of ``exists[=i]`` for i in 0..k
    * ``exists[=k]`` with k above the domain size becomes false
    """
    n = domain_size

    def rewrite(f: Formula) -> Formula:
        if not isinstance(f, CountingExists):
            return _rebuild(f, rewrite)
        body = rewrite(f.body)
        if f.op == ">=":
            if f.k == 0:
                return TOP
            return Not(at_most(f.var, f.k - 1, body))
        if f.op == "<=":
            return at_most(f.var, f.k, body)
        return exactly(f.var, f.k, body)

    def exactly(var: str, k: int, body: Formula) -> Formula:
        return BOT if k > n else CountingExists(var, "=", k, body)

    def at_most(var: str, k: int, body: Formula) -> Formula:
        return disjunction(exactly(var, i, body) for i in range(k + 1))

    return simplify(rewrite(sentence))


def lower_zero_counting(sentence: Formula) -> Formula:
    """exists[=0] v: phi  becomes  ~exists v: phi"""
    def rewrite(f: Formula) -> Formula:
        if isinstance(f, CountingExists) and f.op == "=" and f.k == 0:
            return Not(Exists(f.var, rewrite(f.body)))
        return _rebuild(f, rewrite)

    return simplify(rewrite(sentence))
