"""Python-int bitsets over element IDs and their numpy views."""
import numpy as np


def to_mask(ids) -> int:
    mask = 0
    for i in ids:
        mask |= 1 << int(i)
    return mask


def from_bool(flags: np.ndarray) -> int:
    packed = np.packbits(flags.astype(bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def to_bool(mask: int, size: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((size + 7) // 8 or 1, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def to_ids(mask: int, size: int) -> np.ndarray:
    return np.flatnonzero(to_bool(mask, size))


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
