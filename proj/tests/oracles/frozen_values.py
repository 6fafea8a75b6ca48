"""Independent reference computations for the frozen expected values in the
C++ tests. Plain Python floats, no shared code with the library.

Run: python3 tests/oracles/frozen_values.py
"""
import itertools
import random

Y = [1.2, -0.5, 3.1, 0.0, 2.2, -1.7, 0.9, 4.4, -2.3, 1.1]
PH = [1.0, 0.3, 2.5, -0.4, 2.9, -1.0, 1.5, 3.0, -2.0, 0.2]
PM = [1.6, -0.9, 3.5, 0.5, 1.8, -2.5, 0.1, 4.0, -3.1, 1.1]
WH = [0.1, 0.5, 0.9, 0.3, 0.0, 1.0, 0.7, 0.2, 0.6, 0.4]


def v_weights(a, b, n):
    c = (3 - 3 * b) / (a * a - a + 1)
    return [c * (3 * i * i / n ** 2 - 2 * (a + 1) * i / n + a) + 1 for i in range(1, n + 1)]


def mse(p, y):
    return sum((pi - yi) ** 2 for pi, yi in zip(p, y)) / len(y)


def rank_weighted(p, y, v):
    losses = sorted((pi - yi) ** 2 for pi, yi in zip(p, y))
    return sum(vi * li for vi, li in zip(v, losses)) / len(y)


def blended(p, y, a, b, theta):
    return theta * mse(p, y) + (1 - theta) * rank_weighted(p, y, v_weights(a, b, len(y)))


def c_across(wh):
    n = len(wh)
    m = sum(wh) / n
    return sum((w - m) ** 2 for w in wh) / n


def c_within(wh):
    return 1 - sum((w - (1 - w)) ** 2 for w in wh) / len(wh)


def joint(wh):
    return [w * h + (1 - w) * m for w, h, m in zip(wh, PH, PM)]


print("v(0.5,0.5,2) =", v_weights(0.5, 0.5, 2))
print("v(0.5,2,2)   =", v_weights(0.5, 2, 2))
print("v(0.3,0.7,5) =", [repr(x) for x in v_weights(0.3, 0.7, 5)])
print("c_across =", repr(c_across(WH)))
print("c_within =", repr(c_within(WH)))
print("mse joint/h/m =", repr(mse(joint(WH), Y)), repr(mse(PH, Y)), repr(mse(PM, Y)))
for a, b, th in [(0.5, 0.5, 0.3), (0.2, 1.25, 0.0)]:
    print(f"blended({a},{b},{th}) joint/h/m =", repr(blended(joint(WH), Y, a, b, th)),
          repr(blended(PH, Y, a, b, th)), repr(blended(PM, Y, a, b, th)))

# closed-form squared-loss weights and their joint MSE
w_cf = []
for h, m, y in zip(PH, PM, Y):
    w_cf.append(0.0 if h == m else min(1.0, max(0.0, (y - m) / (h - m))))
print("closed-form w_h =", [repr(x) for x in w_cf])
print("closed-form mse =", repr(mse(joint(w_cf), Y)))

# n = 3 exhaustive grid at resolution 0.05 for blended(0.5, 0.5, 0.5)
y3, h3, m3 = [0.4, -1.0, 2.0], [1.0, 0.5, 1.0], [-0.2, -2.0, 3.5]
best = None
grid = [k / 20 for k in range(21)]
for ws in itertools.product(grid, repeat=3):
    p = [w * h + (1 - w) * m for w, h, m in zip(ws, h3, m3)]
    val = blended(p, y3, 0.5, 0.5, 0.5)
    if best is None or val < best[0]:
        best = (val, ws)
print("n=3 grid best =", repr(best[0]), best[1])

# same, with the third target outside its bracket
y3b = [0.4, -1.0, 5.0]
best = None
for ws in itertools.product(grid, repeat=3):
    p = [w * h + (1 - w) * m for w, h, m in zip(ws, h3, m3)]
    val = blended(p, y3b, 0.5, 0.5, 0.5)
    if best is None or val < best[0]:
        best = (val, ws)
print("n=3 grid best (outside bracket) =", repr(best[0]), best[1])
