"""设计转储与结果转储使用的二进制编码工具"""
import base64
from typing import Iterable, List

import numpy as np


def pack_u32_base64(values) -> str:
    """将整数数组编码为小端 32 位整数序列的 base64 文本"""
    data = np.asarray(values, dtype="<u4").tobytes()
    return base64.b64encode(data).decode("ascii")


def unpack_u32_base64(text: str) -> np.ndarray:
    """pack_u32_base64 的逆操作"""
    data = base64.b64decode(text.encode("ascii"))
    return np.frombuffer(data, dtype="<u4").astype(np.uint32)


def words_to_hex(words: Iterable[int]) -> str:
    """64 位字序列转十六进制文本，每个字 16 位十六进制，第 0 个字在最前"""
    return "".join(f"{int(w):016x}" for w in words)


def bits_to_words(bits) -> List[int]:
    """
    将逻辑比特向量打包为 64 位字，第 i 个比特位于第 i // 64 个字的第 i % 64 位

    Args:
        bits: 布尔数组

    Returns:
        List[int]: 字列表
    """
    flags = np.asarray(bits, dtype=bool)
    words = []
    for start in range(0, flags.size, 64):
        chunk = np.flatnonzero(flags[start:start + 64])
        word = 0
        for offset in chunk:
            word |= 1 << int(offset)
        words.append(word)
    return words
