"""Recompute the 4x4 braiding table of the Sp4(3) class of I + e14 and print the 27 verdicts."""

from collections import Counter

from lierack.braiding import lemma_uno_decide

res = lemma_uno_decide()
for row in res["table"]:
    print("  ".join(f"{e:>12}" for e in row))
print("matches the displayed table:", res["matches_printed_table"])
for k, v in res["products"].items():
    print(f"{k}: {v['form']} {'ok' if v['holds'] else 'MISMATCH'}")
print(Counter(r["reason"] for r in res["tuples"]))
print(f"{res['infinite']}/{res['total']} infinite")
