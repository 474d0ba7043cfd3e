"""Addressable max-priority queue (binary heap with an id -> slot map)."""

from __future__ import annotations


class AddressablePQ:
    __slots__ = ("_heap", "_keys", "_pos")

    def __init__(self):
        self._heap: list[int] = []
        self._keys: dict[int, float] = {}
        self._pos: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)

    def __contains__(self, item: int) -> bool:
        return item in self._pos

    def key(self, item: int) -> float:
        return self._keys[item]

    def push(self, item: int, key: float) -> None:
        if item in self._pos:
            raise KeyError(f"{item} already queued")
        heap = self._heap
        self._keys[item] = key
        self._pos[item] = len(heap)
        heap.append(item)
        self._sift_up(len(heap) - 1)

    def update(self, item: int, key: float) -> None:
        old = self._keys[item]
        self._keys[item] = key
        if key > old:
            self._sift_up(self._pos[item])
        elif key < old:
            self._sift_down(self._pos[item])

    def push_or_update(self, item: int, key: float) -> None:
        if item in self._pos:
            self.update(item, key)
        else:
            self.push(item, key)

    def remove(self, item: int) -> None:
        heap = self._heap
        i = self._pos.pop(item)
        del self._keys[item]
        last = heap.pop()
        if i < len(heap):
            heap[i] = last
            self._pos[last] = i
            self._sift_up(i)
            self._sift_down(self._pos[last])

    def top(self) -> tuple[int, float]:
        item = self._heap[0]
        return item, self._keys[item]

    def pop(self) -> tuple[int, float]:
        item = self._heap[0]
        key = self._keys[item]
        self.remove(item)
        return item, key

    def clear(self) -> None:
        self._heap.clear()
        self._keys.clear()
        self._pos.clear()

    def _sift_up(self, i: int) -> None:
        heap = self._heap
        keys = self._keys
        pos = self._pos
        item = heap[i]
        k = keys[item]
        while i > 0:
            parent = (i - 1) >> 1
            pitem = heap[parent]
            if keys[pitem] >= k:
                break
            heap[i] = pitem
            pos[pitem] = i
            i = parent
        heap[i] = item
        pos[item] = i

    def _sift_down(self, i: int) -> None:
        heap = self._heap
        keys = self._keys
        pos = self._pos
        n = len(heap)
        item = heap[i]
        k = keys[item]
        while True:
            child = 2 * i + 1
            if child >= n:
                break
            ck = keys[heap[child]]
            right = child + 1
            if right < n:
                rk = keys[heap[right]]
                if rk > ck:
                    child = right
                    ck = rk
            if ck <= k:
                break
            citem = heap[child]
            heap[i] = citem
            pos[citem] = i
            i = child
        heap[i] = item
        pos[item] = i
