"""
配置文件
"""
import os
from pathlib import Path

from dotenv import load_dotenv

# 项目根目录
ROOT_DIR = Path(__file__).parent.parent

# 先加载 .env，后面的 os.environ.get 才能读到
load_dotenv(ROOT_DIR / ".env")

# 日志目录
LOGS_DIR = Path(os.environ.get("CHARSUM_LOGS_DIR", ROOT_DIR / "logs"))
LOG_LEVEL = os.environ.get("CHARSUM_LOG_LEVEL", "INFO")

# 并发工作线程上限
THREADS = max(1, int(os.environ.get("CHARSUM_THREADS", 1)))

# 有限域配置
FIELD_CONFIG = {
    "max_degree": 24,  # r 上限
    "max_q": 2 ** 40,  # q 上限
    "vector_int_limit": 2 ** 62,  # 超过此值向量化运算改用 object 数组
}

# 特征和配置
CHARACTER_CONFIG = {
    "chunk_elems": 1 << 22,  # 分块计算迹矩阵时每块的元素数
}

# 加法能量配置
ENERGY_CONFIG = {
    "bruteforce_limit": 20,  # 暴力 O(|S|^4) 算法允许的最大 |S|
    "dense_ratio": 0.25,  # |S|^2 >= dense_ratio * q 时使用长度为 q 的稠密数组
    "chunk_elems": 1 << 22,
    "fft_min_pairs": 1 << 24,  # |A||B| 超过此值且 >= q 时改用 FFT 卷积
}

# 有理函数配置
RATIONAL_MAP_CONFIG = {
    "condition2_search_limit": 1 << 16,  # 非线性条件违例搜索遍历的最大元素数
}

# 子集选取配置
SELECTION_CONFIG = {
    "exhaustive_limit": 20,  # 穷举策略允许的最大 |D|
    "budget": 200,  # 局部搜索迭代预算
    "restarts": 8,  # 局部搜索随机起点数
}

# 和积方程配置
SUMPRODUCT_CONFIG = {
    "brute_limit": 10 ** 8,  # 暴力算法允许的最大 |A||B||C||D|
    "fft_exact_limit": 2 ** 50,  # FFT 结果四舍五入仍然精确的上限
}

# 隐含常数默认值
BOUND_CONFIG = {
    "lambda": 1.0,
    "kappa": 1.0,
}

# 命令行配置
CLI_CONFIG = {
    "default_format": "csv",
    "default_seed": 0,
    "exit_codes": {
        "ok": 0,
        "check_failed": 1,
        "invalid": 2,
        "guard": 3,
    },
}
