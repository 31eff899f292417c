#!/usr/bin/env python3
"""Regenerates the frozen golden fixtures from an independent reference XOF
(Python hashlib / pycryptodome). Run once; the outputs are committed."""
import hashlib
import struct
from pathlib import Path

from Crypto.Hash import KangarooTwelve

HERE = Path(__file__).parent
R_BYTES = 168


def encode(seed: bytes, q: int, id_seg: int) -> bytes:
    assert len(seed) == 36
    return seed + struct.pack("<I", q) + struct.pack("<H", id_seg)


def shake(data: bytes) -> bytes:
    return hashlib.shake_128(data).digest(R_BYTES)


def gen_seg(data: bytes, q: int, length: int, w: int = 32):
    block = shake(data)
    thresh = (2**w // q) * q
    seg = []
    for i in range(R_BYTES * 8 // w):
        s = int.from_bytes(block[i * w // 8:(i + 1) * w // 8], "little")
        if s < thresh:
            seg.append(s)
            if len(seg) == length:
                break
    return seg


def main():
    zero = bytes(36)
    seq = bytes(range(36))
    inputs = [
        b"",
        encode(zero, 1, 0),
        encode(zero, 786433, 5),
        encode(seq, 0xFFFFFFFF, 0xFFFF),
    ]
    with open(HERE / "xof_shake128.txt", "w") as f:
        f.write("# input-hex output-hex (SHAKE128, 1344-bit output)\n")
        for m in inputs:
            f.write(f"{m.hex() or '-'} {shake(m).hex()}\n")
    with open(HERE / "xof_k12.txt", "w") as f:
        f.write("# input-hex output-hex (KangarooTwelve, empty customization, 1344-bit output)\n")
        for m in inputs:
            out = KangarooTwelve.new(data=m).read(R_BYTES)
            f.write(f"{m.hex() or '-'} {out.hex()}\n")

    with open(HERE / "golden_segments.txt", "w") as f:
        f.write("# seed-hex q id_seg len words...\n")
        for q, idx, length in [(786433, 0, 32), (3, 0, 42), (12289, 7, 16)]:
            seg = gen_seg(encode(zero, q, idx), q, length)
            f.write(f"{zero.hex()} {q} {idx} {length} " + " ".join(map(str, seg)) + "\n")

    # Golden MRP: N = 256, base = [7681, 12289], len = 32, n_seg = 8, identity layout.
    n, length, nseg, base = 256, 32, 8, [7681, 12289]
    out = bytearray(b"MRPB")
    out += struct.pack("<IIII", 1, n, 32, len(base))
    for q in base:
        out += struct.pack("<I", q)
    out += struct.pack("<I", 0)
    for q in base:
        limb = []
        for idx in range(nseg):
            seg = gen_seg(encode(zero, q, idx), q, length)
            assert len(seg) == length
            limb += seg
        out += struct.pack(f"<{n}I", *limb)
    (HERE / "golden_mrp_n256.bin").write_bytes(bytes(out))


if __name__ == "__main__":
    main()
