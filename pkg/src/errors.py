"""
异常定义
输入错误同时继承 ValueError；计算保护类错误继承 GuardError
"""


class CharSumError(Exception):
    """所有库异常的基类"""


class GuardError(CharSumError):
    """计算保护：输入合法但超出允许的规模或定义域"""


# ---- 输入错误 ----

class NotPrime(CharSumError, ValueError):
    def __init__(self, p: int):
        super().__init__(f"特征 p={p} 不是素数")
        self.p = p


class Reducible(CharSumError, ValueError):
    def __init__(self, modulus):
        super().__init__(f"模多项式 {list(modulus)} 在 F_p 上可约")
        self.modulus = tuple(modulus)


class DegreeMismatch(CharSumError, ValueError):
    """模多项式不是首一多项式或次数与 r 不符"""


class InvalidElement(CharSumError, ValueError):
    """元素编码不在 [0, q) 内"""


class FieldMismatch(CharSumError, ValueError):
    """两个对象属于不同的有限域"""


class NotABasis(CharSumError, ValueError):
    """输入向量不构成 F_q 在 F_p 上的基"""


class EvenCharacteristic(CharSumError, ValueError):
    """需要奇特征"""


class ZeroDenominator(CharSumError, ValueError):
    """有理函数的分母为零多项式"""


class PoleInSet(CharSumError, ValueError):
    def __init__(self, pole: int):
        super().__init__(f"有理函数在集合内有极点: {pole}")
        self.pole = pole


class UnstableSet(CharSumError, ValueError):
    """f 不把 D 映到 D 内"""


class ConditionViolated(CharSumError, ValueError):
    """f 违反非线性条件"""


class BadParameters(CharSumError, ValueError):
    """构造所需的参数条件不满足"""


class NoSuchCharacter(CharSumError, ValueError):
    """找不到满足要求的加法特征"""


# ---- 计算保护 ----

class TooLarge(GuardError):
    """规模超过算法允许的上限"""


class TooSmallPrime(GuardError):
    """素数太小，构造会退化"""


class DomainError(GuardError):
    """参数落在公式的定义域之外（例如 log|D| = 0）"""
