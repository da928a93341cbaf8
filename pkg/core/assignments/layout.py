"""
全局测试布局表

逻辑测试下标按段连续编号：先是非末层（层号升序，层内重复次数升序），
再是末层序列（序列号升序）。每段在打包存储中从新的 64 位字开始（word_start），
因此按段取块只需一次切片。
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from ..config.params import ProblemParams
from ..errors import LayoutMismatchError

WORD_BITS = 64


def words_for(length: int) -> int:
    return (length + WORD_BITS - 1) // WORD_BITS


@dataclass(frozen=True)
class LayoutSegment:
    """布局中的一段连续测试"""
    kind: str
    level: int
    index: int
    start: int
    length: int
    word_start: int

    @property
    def stop(self) -> int:
        return self.start + self.length

    @property
    def num_words(self) -> int:
        return words_for(self.length)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "level": self.level,
            "index": self.index,
            "start": self.start,
            "length": self.length,
            "word_start": self.word_start,
        }


class TestLayout:
    """测试段的有序表，支持按 (层, 重复) 或末层序列号 O(1) 查找"""

    # 避免 pytest 把本类当作测试类收集
    __test__ = False

    def __init__(self, segments: List[LayoutSegment]):
        self.segments: Tuple[LayoutSegment, ...] = tuple(segments)
        self._by_key: Dict[Tuple[str, int, int], LayoutSegment] = {
            (seg.kind, seg.level, seg.index): seg for seg in self.segments
        }
        self._starts = [seg.start for seg in self.segments]

    @classmethod
    def from_lengths(cls, entries: List[Tuple[str, int, int, int]]) -> "TestLayout":
        """
        由 (kind, level, index, length) 序列依次排布出布局

        Args:
            entries: 段描述，按全局顺序给出

        Returns:
            TestLayout: 布局表
        """
        segments = []
        start = 0
        word_start = 0
        for kind, level, index, length in entries:
            segments.append(LayoutSegment(kind, level, index, start, length, word_start))
            start += length
            word_start += words_for(length)
        return cls(segments)

    @classmethod
    def from_params(cls, params: ProblemParams) -> "TestLayout":
        """二叉分裂设计的布局：C̃ 个 C·k 块每层，随后 F 个 2k 序列"""
        entries = []
        for level in params.levels:
            for rep in range(params.Ctil):
                entries.append(("level", level, rep, params.block_size))
        for seq in range(params.num_final_sequences):
            entries.append(("final", -1, seq, params.final_width))
        return cls.from_lengths(entries)

    @property
    def num_tests(self) -> int:
        if not self.segments:
            return 0
        return self.segments[-1].stop

    @property
    def num_words(self) -> int:
        if not self.segments:
            return 0
        last = self.segments[-1]
        return last.word_start + last.num_words

    def level_segment(self, level: int, rep: int) -> LayoutSegment:
        return self._lookup("level", level, rep)

    def final_segment(self, seq: int) -> LayoutSegment:
        return self._lookup("final", -1, seq)

    def segment(self, kind: str, index: int, level: int = -1) -> LayoutSegment:
        return self._lookup(kind, level, index)

    def _lookup(self, kind: str, level: int, index: int) -> LayoutSegment:
        seg = self._by_key.get((kind, level, index))
        if seg is None:
            raise KeyError(f"布局中不存在段 kind={kind} level={level} index={index}")
        return seg

    def segment_of(self, test_index: int) -> Optional[LayoutSegment]:
        """逻辑测试下标所属的段；越界时返回 None"""
        if not 0 <= test_index < self.num_tests:
            return None
        # 二分查找最后一个 start <= test_index 的段
        lo, hi = 0, len(self._starts)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._starts[mid] <= test_index:
                lo = mid
            else:
                hi = mid
        return self.segments[lo]

    def require_same(self, other: "TestLayout"):
        """两份布局不一致时引发 LayoutMismatchError"""
        if self != other:
            raise LayoutMismatchError(
                f"布局不一致: {len(self.segments)} 段/{self.num_tests} 个测试 与 "
                f"{len(other.segments)} 段/{other.num_tests} 个测试"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TestLayout):
            return NotImplemented
        return self.segments == other.segments

    def __hash__(self) -> int:
        return hash(self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    def to_dict(self) -> List[Dict[str, Any]]:
        return [seg.to_dict() for seg in self.segments]
