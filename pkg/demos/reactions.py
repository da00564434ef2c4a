"""Balancing hydrogen combustion."""

from moltype import PressureCondition, TempCondition, balance_check, make_reaction
from moltype.fixtures import hydrogen, oxygen, water
from moltype.reactions import is_balanced, reverse_reaction, serialize_reaction

r = make_reaction(
    [(2, hydrogen()), (1, oxygen())],
    [(2, water())],
    [TempCondition(500.0), PressureCondition(1.0)],
    rate=0.1,
)
print({s.value: d for s, d in balance_check(r).items()}, is_balanced(r))

short = make_reaction([(1, hydrogen())], [(1, water())])
# positive means the products carry more of that element
print({s.value: d for s, d in balance_check(short).items()})
print({s.value: d for s, d in balance_check(reverse_reaction(short)).items()})

print(serialize_reaction(r).split("MOLECULE")[0])
