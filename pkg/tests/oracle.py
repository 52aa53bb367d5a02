"""Naive hash-map de Bruijn graph used as the differential-testing oracle.

Built from the same padded k-mer multiset as the succinct index (k-1
leading dummies, k-2 trailing dummies, plus one structural closure edge
per chain-terminal node), but with plain dictionaries over label strings
and brute-force queries throughout.
"""

from __future__ import annotations

from collections import defaultdict

DUMMY = "$"


def colex_key(label: str) -> str:
    return label[::-1]


class NaiveDbg:
    def __init__(self, strings: list[str], k: int):
        self.k = k
        edges: set[tuple[str, str, bool]] = set()
        for s in strings:
            padded = DUMMY * (k - 1) + s + DUMMY * (k - 2)
            for t in range(len(padded) - k + 1):
                window = padded[t : t + k]
                edges.add((window[: k - 1], window[k - 1], False))
            terminal = padded[-(k - 1):]
            edges.add((terminal, DUMMY, True))
        self.out: dict[str, list[tuple[str, str | None]]] = defaultdict(list)
        self.incoming: dict[str, list[str]] = defaultdict(list)
        labels: set[str] = set()
        for src, sym, closure in edges:
            labels.add(src)
            target = None if closure else src[1:] + sym
            self.out[src].append((sym, target))
            if target is not None:
                labels.add(target)
                self.incoming[target].append(src)
        for src in self.out:
            self.out[src].sort()
        for tgt in self.incoming:
            self.incoming[tgt].sort(key=colex_key)
        self.labels = sorted(labels, key=colex_key)
        self.id_of = {lab: i + 1 for i, lab in enumerate(self.labels)}

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(len(v) for v in self.out.values())

    def label(self, v: int) -> str:
        return self.labels[v - 1]

    def outdegree(self, label: str) -> int:
        return len(self.out[label])

    def forward(self, label: str, sym: str) -> str | None:
        for s, tgt in self.out[label]:
            if s == sym:
                return tgt
        return None

    def forward_r(self, label: str, r: int) -> str | None:
        return self.out[label][r - 1][1]

    def indegree(self, label: str) -> int:
        return len(self.incoming.get(label, []))

    def backward(self, label: str) -> list[str]:
        return self.incoming.get(label, [])

    def is_starting(self, label: str) -> bool:
        return label[0] == DUMMY and DUMMY not in label[1:]

    def is_ending(self, label: str) -> bool:
        return label[-1] == DUMMY and DUMMY not in label[:-1]

    def is_solid(self, label: str) -> bool:
        return DUMMY not in label

    def is_critical(self, label: str) -> bool:
        return self.is_solid(label) and any(
            self.outdegree(u) > 1 for u in self.backward(label)
        )

    def colorable_labels(self) -> list[str]:
        return [
            lab
            for lab in self.labels
            if self.is_starting(lab) or self.is_ending(lab) or self.is_critical(lab)
        ]


def walk_path(boss, read: str) -> list[int]:
    """Node ids of the $·read·$ path in the succinct index."""
    from cdbg.sequence import DUMMY, SYMBOL_CODES

    k = boss.k
    v = boss.label_to_node(DUMMY + read[: k - 2])
    path = [v]
    for ch in read[k - 2 :] + DUMMY:
        v = boss.forward(v, SYMBOL_CODES[ch])
        path.append(v)
    return path


def is_unambiguous(boss, is_colored, read: str) -> bool:
    """No pair of colored path nodes shares a predecessor that is itself on
    the path (the definitional ambiguity test)."""
    path = walk_path(boss, read)
    on_path = set(path)
    colored_on_path = {u for u in on_path if is_colored(u)}
    for v in on_path:
        if boss.outdegree(v) > 1:
            hits = sum(
                1 for _, _, t in boss.successors(v) if t in colored_on_path
            )
            if hits >= 2:
                return False
    return True
