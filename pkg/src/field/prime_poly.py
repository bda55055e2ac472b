"""
F_p 上的多项式运算

多项式用系数列表表示，常数项在前：a_0 + a_1 X + ... + a_n X^n 对应 [a_0, ..., a_n]，
零多项式为 []。所有函数返回去掉高位零的新列表，不修改输入。
"""
import itertools
from typing import Iterator, List, Sequence, Tuple

Poly = List[int]

# n < 3.3e24 时这组底数的 Miller-Rabin 是确定性的
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """确定性 Miller-Rabin 素性检验"""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: Sequence[int]) -> int:
    """零多项式的次数记为 -1"""
    return len(trim(a)) - 1


def add(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def scale(a: Sequence[int], c: int, p: int) -> Poly:
    return trim([x * c % p for x in a])


def mul(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_poly(a: Sequence[int], b: Sequence[int], p: int) -> Tuple[Poly, Poly]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("除以零多项式")
    r = trim(a)
    if len(r) < len(b):
        return [], r
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * (len(r) - len(b) + 1)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        c = r[-1] * inv_lead % p
        quot[shift] = c
        for i, y in enumerate(b):
            r[i + shift] = (r[i + shift] - c * y) % p
        r = trim(r)
    return trim(quot), r


def mod(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    return divmod_poly(a, b, p)[1]


def monic(a: Sequence[int], p: int) -> Poly:
    a = trim(a)
    if not a:
        return []
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    """首一最大公因式"""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def inverse_mod(a: Sequence[int], m: Sequence[int], p: int) -> Poly:
    """扩展欧几里得求 a 模 m 的逆"""
    r0, r1 = trim(m), mod(a, m, p)
    s0, s1 = [], [1]
    while r1:
        qt, rem = divmod_poly(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(qt, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("多项式不可逆")
    return mod(scale(s0, pow(r0[0], -1, p), p), m, p)


def powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> Poly:
    result: Poly = [1]
    base = mod(a, m, p)
    while e > 0:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return mod(result, m, p)


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or 检验：对 i <= deg/2 检查 gcd(f, X^{p^i} - X) = 1"""
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = powmod(h, p, f, p)
        if len(gcd(f, sub(h, x, p), p)) > 1:
            return False
    return True


def iter_monic(p: int, r: int) -> Iterator[Tuple[int, ...]]:
    """按 (c_0, ..., c_{r-1}) 字典序枚举 r 次首一多项式"""
    for low in itertools.product(range(p), repeat=r):
        yield low + (1,)


def least_irreducible(p: int, r: int) -> Tuple[int, ...]:
    for f in iter_monic(p, r):
        if is_irreducible(f, p):
            return f
    raise AssertionError(f"F_{p} 上不存在 {r} 次不可约多项式")  # 不会发生
