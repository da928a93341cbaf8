"""
测试结果位向量

存储为打包的 64 位字：布局中每段从 word_start 个字开始，段内第 s 个测试
位于第 word_start + s // 64 个字的第 s % 64 位。逻辑下标 i 对应段 start + s。
"""
from typing import List, Optional

import numpy as np

from ..assignments.layout import LayoutSegment, TestLayout
from ..utils.codec import bits_to_words, words_to_hex

_SIX = np.uint64(6)
_LOW6 = np.uint64(63)
_ONE = np.uint64(1)


def set_slots(words: np.ndarray, segment: LayoutSegment, slots) -> None:
    """在可写字数组中将段内若干槽位置 1，重复槽位安全"""
    slots = np.asarray(slots, dtype=np.uint64)
    if slots.size == 0:
        return
    index = (slots >> _SIX).astype(np.int64) + segment.word_start
    masks = _ONE << (slots & _LOW6)
    np.bitwise_or.at(words, index, masks)


class Outcomes:
    """t 个测试结果，附带其布局"""

    def __init__(self, words: np.ndarray, layout: TestLayout):
        words = np.array(words, dtype=np.uint64)
        if words.shape != (layout.num_words,):
            raise ValueError(f"字数组长度 {words.shape} 与布局要求的 {layout.num_words} 不符")
        words.setflags(write=False)
        self.words = words
        self.layout = layout

    @classmethod
    def empty_words(cls, layout: TestLayout) -> np.ndarray:
        return np.zeros(layout.num_words, dtype=np.uint64)

    @classmethod
    def from_bool_array(cls, bits, layout: TestLayout) -> "Outcomes":
        """由长度为 t 的逻辑布尔向量构造"""
        flags = np.asarray(bits, dtype=bool)
        if flags.shape != (layout.num_tests,):
            raise ValueError(f"布尔向量长度 {flags.shape} 与测试数 {layout.num_tests} 不符")
        words = cls.empty_words(layout)
        for seg in layout.segments:
            positive = np.flatnonzero(flags[seg.start:seg.stop])
            set_slots(words, seg, positive)
        return cls(words, layout)

    @property
    def num_tests(self) -> int:
        return self.layout.num_tests

    def bits_at(self, segment: LayoutSegment, slots) -> np.ndarray:
        """段内若干槽位的测试结果"""
        slots = np.asarray(slots, dtype=np.uint64)
        index = (slots >> _SIX).astype(np.int64) + segment.word_start
        return ((self.words[index] >> (slots & _LOW6)) & _ONE).astype(bool)

    def segment_bits(self, segment: LayoutSegment) -> np.ndarray:
        return self.bits_at(segment, np.arange(segment.length, dtype=np.uint64))

    def test(self, index: int) -> bool:
        """逻辑下标为 index 的测试结果"""
        seg = self.layout.segment_of(index)
        if seg is None:
            raise IndexError(f"测试下标 {index} 超出范围 [0, {self.num_tests})")
        return bool(self.bits_at(seg, [index - seg.start])[0])

    def to_bool_array(self) -> np.ndarray:
        if not self.layout.segments:
            return np.zeros(0, dtype=bool)
        return np.concatenate([self.segment_bits(seg) for seg in self.layout.segments])

    def count_positive(self) -> int:
        return int(self.to_bool_array().sum())

    def to_words(self) -> List[int]:
        """逻辑位向量重新打包成的字，不含段间对齐填充"""
        return bits_to_words(self.to_bool_array())

    def to_hex(self) -> str:
        """结果转储：逻辑位打包为 64 位字，第 0 个字在前，每字 16 位十六进制"""
        return words_to_hex(self.to_words())

    def issubset(self, other: "Outcomes") -> bool:
        """逐位 self ≤ other"""
        self.layout.require_same(other.layout)
        return bool(np.all((self.words & ~other.words) == 0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Outcomes):
            return NotImplemented
        return self.layout == other.layout and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash(self.words.tobytes())

    def __repr__(self) -> str:
        return f"Outcomes(t={self.num_tests}, positive={self.count_positive()})"
