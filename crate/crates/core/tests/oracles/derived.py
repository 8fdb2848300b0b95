"""Independent reference values for tests/derived.rs (plain Python, no project code)."""
from fractions import Fraction
from math import floor


def fixed_point(rules, seed, n):
    w = seed
    while len(w) < n:
        w = "".join(rules[c] for c in w)
    return w[:n]


def occurrences(hay, needle):
    out = []
    for i in range(len(hay) - len(needle) + 1):
        if all(hay[i + k] == needle[k] for k in range(len(needle))):
            out.append(i)
    return out


def factors(w, n):
    return sorted({w[i:i + n] for i in range(len(w) - n + 1)})


def mechanical(alpha, beta, n):
    return "".join(str(floor((k + 1) * alpha + beta) - floor(k * alpha + beta)) for k in range(n))


def cf(quotients):
    x = Fraction(0)
    for a in reversed(quotients):
        x = 1 / (a + x)
    return x


def max_gap(w, n):
    last, best = {}, 0
    for i in range(len(w) - n + 1):
        u = w[i:i + n]
        if u in last:
            best = max(best, i - last[u])
        last[u] = i
    return best


fib = fixed_point({"0": "01", "1": "0"}, "0", 10_000)
tm = fixed_point({"0": "01", "1": "10"}, "0", 10_000)

occ = occurrences(fib, "0101")
print("fib 0101: count", len(occ), "first", occ[:8], "last", occ[-1], "sum", sum(occ))
print("fib 1001 first", occurrences(fib, "1001")[:8])
print("tm prefix 8", tm[:8])
print("tm complexity", [len(factors(tm, n)) for n in range(1, 11)])
print("fib factors 2", factors(fib, 2), "3", factors(fib, 3))
print("mechanical golden", cf([1] * 8), mechanical(cf([1] * 8), 0, 12))
print("mechanical [2]", cf([2]), mechanical(cf([2]), 0, 4))

occ = occurrences(tm, "010")
rets = []
for a, b in zip(occ, occ[1:]):
    r = tm[a:b]
    if r not in rets:
        rets.append(r)
l_hat = max(Fraction(max_gap(tm, n), n) for n in range(1, 11))
count_bound = l_hat * (l_hat + 1) ** 2
len_bound = l_hat * 3
print("tm 010 returns", rets, "L", l_hat,
      "count ok", len(rets) <= count_bound, "len ok", max(map(len, rets)) <= len_bound)
