"""
Counting matched pairs of cyclic groups
=======================================

Actions of C_n on C_m by automorphisms are b -> b^t with t^n = 1 mod m.
For n = 2 these are all the matched pairs; for n = 3 there are extra ones
when m is even.
"""

from knit import cyclic_report, varsigma

print("t with t^2 = 1 mod 24:", varsigma(2, 24))

print(" m  |C2,Cm|  |C3,Cm|  stated")
for m in range(1, 25):
    r2 = cyclic_report(2, m)
    r3 = cyclic_report(3, m)
    flag = " *" if r3.discrepancy else ""
    print(f"{m:2d}  {r2.oracle_count:6d}  {r3.oracle_count:7d}  {str(r3.stated_count):>6}{flag}")

# %%
# Rows marked * are the multiples of 6: the constructions produce one more
# pair than the stated closed-form count.
