"""
有限域 F_{p^r} 的构造与运算

元素用 [0, q) 内的整数编码：系数向量 (c_0, ..., c_{r-1}) 对应 sum c_i p^i，
其中 c_i 是元素在多项式基 {1, X, ..., X^{r-1}} 下的坐标。
标量运算使用 Python 整数，*_many 系列方法对 numpy 数组做向量化运算。
"""
import bisect
import functools
import json
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config.config import CHARACTER_CONFIG, FIELD_CONFIG
from src.errors import (
    BadParameters,
    DegreeMismatch,
    EvenCharacteristic,
    FieldMismatch,
    InvalidElement,
    NotABasis,
    NotPrime,
    Reducible,
    TooLarge,
)
from src.field import prime_poly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldCtx:
    """
    F_{p^r} 的不可变描述
    :param p: 特征
    :param r: 扩张次数
    :param modulus: 首一不可约模多项式，常数项在前，长度 r+1
    """
    p: int
    r: int
    modulus: Tuple[int, ...]
    q: int = field(init=False)
    # X^k mod modulus 的坐标，k = 0..2r-2
    _reduction: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    # Tr(X^i)，i = 0..r-1
    _trace_vector: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p ** self.r)
        reduction = []
        cur = [1]
        for _ in range(2 * self.r - 1):
            reduction.append(tuple(cur + [0] * (self.r - len(cur))))
            cur = prime_poly.mod([0] + cur, self.modulus, self.p)
        object.__setattr__(self, "_reduction", tuple(reduction))
        # 乘 X^i 的矩阵第 j 列是 X^{i+j} mod m，迹为对角元之和
        trace_vector = tuple(
            sum(reduction[i + j][j] for j in range(self.r)) % self.p
            for i in range(self.r)
        )
        object.__setattr__(self, "_trace_vector", trace_vector)

    # ------------------------------------------------------------------
    # 编码
    # ------------------------------------------------------------------
    def check(self, x: int) -> int:
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.q:
            raise InvalidElement(f"元素 {x} 不在 [0, {self.q}) 内")
        return int(x)

    def decode(self, x: int) -> List[int]:
        digits = []
        for _ in range(self.r):
            x, c = divmod(x, self.p)
            digits.append(c)
        return digits

    def encode(self, digits: Sequence[int]) -> int:
        value = 0
        for c in reversed(list(digits)[: self.r]):
            value = value * self.p + c % self.p
        return value

    @property
    def generator(self) -> int:
        """X 在商环中的剩余类"""
        return self.encode(prime_poly.mod([0, 1], self.modulus, self.p))

    # ------------------------------------------------------------------
    # 标量运算
    # ------------------------------------------------------------------
    def add(self, x: int, y: int) -> int:
        return self.encode([a + b for a, b in zip(self.decode(x), self.decode(y))])

    def neg(self, x: int) -> int:
        return self.encode([-a for a in self.decode(x)])

    def sub(self, x: int, y: int) -> int:
        return self.encode([a - b for a, b in zip(self.decode(x), self.decode(y))])

    def mul(self, x: int, y: int) -> int:
        a, b = self.decode(x), self.decode(y)
        prod = [0] * (2 * self.r - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    prod[i + j] += u * v
        out = [0] * self.r
        for k, c in enumerate(prod):
            if c:
                for j, t in enumerate(self._reduction[k]):
                    out[j] += c * t
        return self.encode(out)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 没有乘法逆元")
        return self.encode(prime_poly.inverse_mod(self.decode(x), self.modulus, self.p))

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        result = 1
        while e > 0:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def frobenius(self, x: int, i: int = 1) -> int:
        return self.pow(x, self.p ** (i % self.r))

    def trace(self, x: int) -> int:
        return sum(c * t for c, t in zip(self.decode(x), self._trace_vector)) % self.p

    # ------------------------------------------------------------------
    # 向量化运算
    # ------------------------------------------------------------------
    @functools.cached_property
    def _dtype(self):
        return np.int64 if self.r * self.p * self.p < FIELD_CONFIG["vector_int_limit"] else object

    @functools.cached_property
    def _powers(self) -> np.ndarray:
        return np.array([self.p ** i for i in range(self.r)], dtype=self._dtype)

    @functools.cached_property
    def _high_reduction(self) -> np.ndarray:
        return np.array(self._reduction[self.r:], dtype=self._dtype).reshape(self.r - 1, self.r)

    @functools.cached_property
    def gram(self) -> np.ndarray:
        """迹形式的 Gram 矩阵 G[i, j] = Tr(X^{i+j})"""
        t = self._trace_vector
        g = [[sum(c * tv for c, tv in zip(self._reduction[i + j], t)) % self.p
              for j in range(self.r)] for i in range(self.r)]
        return np.array(g, dtype=self._dtype)

    def as_array(self, xs) -> np.ndarray:
        return np.asarray(xs, dtype=self._dtype).reshape(-1)

    def digits(self, xs) -> np.ndarray:
        """(n, r) 坐标矩阵"""
        xs = self.as_array(xs)
        return (xs[:, None] // self._powers[None, :]) % self.p

    def from_digits(self, digits: np.ndarray) -> np.ndarray:
        return (digits % self.p) @ self._powers

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=self._dtype)

    def add_many(self, xs, ys) -> np.ndarray:
        xs, ys = np.broadcast_arrays(self.as_array(xs), self.as_array(ys))
        return self.from_digits(self.digits(xs) + self.digits(ys))

    def sub_many(self, xs, ys) -> np.ndarray:
        xs, ys = np.broadcast_arrays(self.as_array(xs), self.as_array(ys))
        return self.from_digits(self.digits(xs) - self.digits(ys))

    def neg_many(self, xs) -> np.ndarray:
        return self.from_digits(-self.digits(xs))

    def mul_many(self, xs, ys) -> np.ndarray:
        xs, ys = np.broadcast_arrays(self.as_array(xs), self.as_array(ys))
        a, b = self.digits(xs), self.digits(ys)
        prod = np.zeros((a.shape[0], 2 * self.r - 1), dtype=self._dtype)
        for i in range(self.r):
            prod[:, i:i + self.r] += a[:, i:i + 1] * b
        prod %= self.p
        low = prod[:, :self.r]
        if self.r > 1:
            low = low + prod[:, self.r:] @ self._high_reduction
        return self.from_digits(low)

    def pow_many(self, xs, e: int) -> np.ndarray:
        if e < 0:
            raise ValueError("pow_many 只支持非负指数")
        base = self.as_array(xs)
        result = np.ones_like(base)
        while e > 0:
            if e & 1:
                result = self.mul_many(result, base)
            base = self.mul_many(base, base)
            e >>= 1
        return result

    def inv_many(self, xs) -> np.ndarray:
        """x^{q-2}，0 映为 0"""
        return self.pow_many(xs, self.q - 2)

    def trace_many(self, xs) -> np.ndarray:
        t = np.array(self._trace_vector, dtype=self._dtype)
        return ((self.digits(xs) @ t) % self.p).astype(np.int64)

    @functools.cached_property
    def trace_table(self) -> np.ndarray:
        """全体元素的迹，按编码索引"""
        return self.trace_many(self.elements())

    def trace_products(self, xs, ys) -> np.ndarray:
        """(len xs, len ys) 矩阵 Tr(x*y)，利用迹形式的双线性"""
        left = (self.digits(xs) @ self.gram) % self.p
        return ((left @ self.digits(ys).T) % self.p).astype(np.int64)


# ----------------------------------------------------------------------
# 构造
# ----------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _make_field(p: int, r: int, modulus: Optional[Tuple[int, ...]]) -> FieldCtx:
    if not prime_poly.is_prime(p):
        raise NotPrime(p)
    if r < 1:
        raise DegreeMismatch(f"扩张次数 r={r} 必须 >= 1")
    if r > FIELD_CONFIG["max_degree"] or p ** r > FIELD_CONFIG["max_q"]:
        raise TooLarge(f"F_{{{p}^{r}}} 超出支持范围 (r <= {FIELD_CONFIG['max_degree']}, q <= 2^40)")
    if modulus is None:
        modulus = prime_poly.least_irreducible(p, r)
        logger.debug(f"F_{p}^{r} 自动选取模多项式 {list(modulus)}")
    else:
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise DegreeMismatch(f"模多项式 {list(modulus)} 不是 {r} 次首一多项式")
        if any(not 0 <= c < p for c in modulus):
            raise DegreeMismatch(f"模多项式系数必须在 [0, {p}) 内: {list(modulus)}")
        if not prime_poly.is_irreducible(modulus, p):
            raise Reducible(modulus)
    return FieldCtx(p=p, r=r, modulus=tuple(modulus))


def make_field(p: int, r: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldCtx:
    """
    构造 F_{p^r}
    :param modulus: 可选的模多项式系数（常数项在前）；缺省时取字典序最小的首一不可约多项式
    """
    return _make_field(int(p), int(r), None if modulus is None else tuple(int(c) for c in modulus))


def trace(ctx: FieldCtx, x: int) -> int:
    return ctx.trace(ctx.check(x))


def power_basis(ctx: FieldCtx) -> List[int]:
    """{1, x, ..., x^{r-1}}，x 为 X 的剩余类"""
    x = ctx.generator
    return [ctx.pow(x, j) for j in range(ctx.r)]


def _inverse_mod_p(matrix: List[List[int]], p: int) -> List[List[int]]:
    """F_p 上的 Gauss-Jordan 求逆，奇异时抛出 NotABasis"""
    n = len(matrix)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] % p), None)
        if pivot is None:
            raise NotABasis("Gram 矩阵奇异，输入不是一组基")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] % p:
                factor = aug[i][col]
                aug[i] = [(v - factor * w) % p for v, w in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def dual_basis(ctx: FieldCtx, basis: Sequence[int]) -> List[int]:
    """
    求对偶基 {w_i}，满足 Tr(w_i b_j) = [i == j]
    Tr(w b) = dig(w) G dig(b)^T，所以 W = (G B^T)^{-1}
    """
    if len(basis) != ctx.r:
        raise NotABasis(f"需要 {ctx.r} 个向量，收到 {len(basis)} 个")
    for b in basis:
        ctx.check(b)
    b_rows = [ctx.decode(b) for b in basis]
    g = ctx.gram.tolist()
    gbt = [[sum(g[i][k] * b_rows[j][k] for k in range(ctx.r)) % ctx.p for j in range(ctx.r)]
           for i in range(ctx.r)]
    w_rows = _inverse_mod_p(gbt, ctx.p)
    return [ctx.encode(row) for row in w_rows]


def quadratic_residues(p: int) -> "Subset":
    """F_p^* 中的平方元集合"""
    if p == 2:
        raise EvenCharacteristic("二次剩余只对奇素数定义")
    ctx = make_field(p, 1)
    return Subset.of(ctx, {z * z % p for z in range(1, p)})


def subfield(ctx: FieldCtx, d: int) -> "Subset":
    """子域 F_{p^d} = {x : x^{p^d} = x}，要求 d | r"""
    if d < 1 or ctx.r % d:
        raise DegreeMismatch(f"{d} 不整除 r={ctx.r}")
    xs = ctx.elements()
    fixed = ctx.pow_many(xs, ctx.p ** d) == xs
    return Subset.of(ctx, xs[fixed].tolist())


# ----------------------------------------------------------------------
# 子集
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Subset:
    """F_q 的子集，元素按编码严格递增"""
    ctx: FieldCtx
    elems: Tuple[int, ...]

    @classmethod
    def of(cls, ctx: FieldCtx, values: Iterable[int]) -> "Subset":
        elems = tuple(sorted({int(v) for v in values}))
        if elems and (elems[0] < 0 or elems[-1] >= ctx.q):
            bad = elems[0] if elems[0] < 0 else elems[-1]
            raise InvalidElement(f"元素 {bad} 不在 [0, {ctx.q}) 内")
        return cls(ctx, elems)

    @classmethod
    def full(cls, ctx: FieldCtx) -> "Subset":
        return cls(ctx, tuple(range(ctx.q)))

    @classmethod
    def empty(cls, ctx: FieldCtx) -> "Subset":
        return cls(ctx, ())

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, x) -> bool:
        i = bisect.bisect_left(self.elems, x)
        return i < len(self.elems) and self.elems[i] == x

    @functools.cached_property
    def array(self) -> np.ndarray:
        return np.array(self.elems, dtype=np.int64)

    def _same_field(self, other: "Subset"):
        if other.ctx != self.ctx:
            raise FieldMismatch("两个子集属于不同的有限域")

    def union(self, other: "Subset") -> "Subset":
        self._same_field(other)
        return Subset.of(self.ctx, set(self.elems) | set(other.elems))

    def difference(self, other: "Subset") -> "Subset":
        self._same_field(other)
        drop = set(other.elems)
        return Subset(self.ctx, tuple(x for x in self.elems if x not in drop))

    def issubset(self, other: "Subset") -> bool:
        self._same_field(other)
        return set(self.elems) <= set(other.elems)

    def nonzero(self) -> "Subset":
        return Subset(self.ctx, tuple(x for x in self.elems if x != 0))


def trace_product_counts(ctx: FieldCtx, xs, ys) -> np.ndarray:
    """#{(x, y) : Tr(xy) = s}，s = 0..p-1，按 xs 分块计算"""
    xs, ys = ctx.as_array(xs), ctx.as_array(ys)
    counts = np.zeros(ctx.p, dtype=np.int64)
    if len(xs) == 0 or len(ys) == 0:
        return counts
    step = max(1, CHARACTER_CONFIG["chunk_elems"] // len(ys))
    for start in range(0, len(xs), step):
        block = ctx.trace_products(xs[start:start + step], ys)
        counts += np.bincount(block.ravel(), minlength=ctx.p)
    return counts


def trace_product_histograms(ctx: FieldCtx, xs, ys) -> np.ndarray:
    """按行统计：H[i, s] = #{y : Tr(x_i y) = s}"""
    xs, ys = ctx.as_array(xs), ctx.as_array(ys)
    out = np.zeros((len(xs), ctx.p), dtype=np.int64)
    if len(xs) == 0 or len(ys) == 0:
        return out
    step = max(1, CHARACTER_CONFIG["chunk_elems"] // len(ys))
    for start in range(0, len(xs), step):
        block = ctx.trace_products(xs[start:start + step], ys)
        rows = block.shape[0]
        offsets = block + ctx.p * np.arange(rows)[:, None]
        out[start:start + rows] = np.bincount(offsets.ravel(), minlength=rows * ctx.p).reshape(rows, ctx.p)
    return out


# ----------------------------------------------------------------------
# 序列化
# ----------------------------------------------------------------------

def dump_subset(subset: Subset, fmt: str = "json") -> str:
    """可移植格式：头部记录 p, r 与模多项式，使编码在不同实现间通用"""
    ctx = subset.ctx
    if fmt == "json":
        return json.dumps({"p": ctx.p, "r": ctx.r, "modulus": list(ctx.modulus),
                           "elems": list(subset.elems)})
    if fmt == "text":
        header = f"# p={ctx.p} r={ctx.r} modulus={','.join(map(str, ctx.modulus))}"
        return "\n".join([header, *map(str, subset.elems)]) + "\n"
    raise ValueError(f"未知的子集格式: {fmt}")


def _check_header(ctx: FieldCtx, p: int, r: int, modulus: Sequence[int]):
    if (p, r, tuple(modulus)) != (ctx.p, ctx.r, ctx.modulus):
        raise FieldMismatch(f"子集头部 (p={p}, r={r}, modulus={list(modulus)}) 与当前域不一致")


def load_subset(ctx: FieldCtx, text: str) -> Subset:
    """解析 JSON（对象或纯整数数组）或按行分隔的十进制编码"""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        data = json.loads(stripped)
        if isinstance(data, dict):
            missing = [k for k in ("p", "r", "modulus", "elems") if k not in data]
            if missing:
                raise BadParameters(f"子集 JSON 缺少字段: {missing}")
            _check_header(ctx, data["p"], data["r"], data["modulus"])
            data = data["elems"]
        return Subset.of(ctx, data)
    values = []
    for line in stripped.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = dict(part.split("=", 1) for part in line[1:].split())
            if not {"p", "r", "modulus"} <= fields.keys():
                raise BadParameters(f"子集头部缺少字段: {line}")
            _check_header(ctx, int(fields["p"]), int(fields["r"]),
                          [int(c) for c in fields["modulus"].split(",")])
            continue
        values.append(int(line))
    return Subset.of(ctx, values)
