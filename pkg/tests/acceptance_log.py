"""Collects one verdict line per acceptance criterion."""

LINES: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {number:2d} {title}" + (f": {detail}" if detail else "")
    LINES.append(line)
    print(line)
