#!/usr/bin/env python3
# Writes the binary test fixtures with nothing but struct and gzip, so the
# C++ readers are checked against an independent writer.
#
#   python3 make_fixtures.py [out_dir]

import gzip
import json
import os
import struct
import sys


def svol_2ch():
    # value(c, x, y, z) = 1000c + 100z + 10y + x
    X = Y = Z = 4
    C = 2
    vals = []
    for c in range(C):
        for z in range(Z):
            for y in range(Y):
                for x in range(X):
                    vals.append(1000.0 * c + 100.0 * z + 10.0 * y + x)
    header = {"dims": [X, Y, Z], "channels": C, "dtype": "f32", "spacing": [1.0, 1.0, 2.5]}
    return header, struct.pack("<%df" % len(vals), *vals)


def nifti_header(dims, datatype, bitpix, slope=0.0, inter=0.0, magic=b"n+1\0", endian="<"):
    h = bytearray(348)
    struct.pack_into(endian + "i", h, 0, 348)
    dim = [len(dims)] + list(dims) + [1] * (7 - len(dims))
    struct.pack_into(endian + "8h", h, 40, *dim)
    struct.pack_into(endian + "h", h, 70, datatype)
    struct.pack_into(endian + "h", h, 72, bitpix)
    struct.pack_into(endian + "8f", h, 76, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
    struct.pack_into(endian + "f", h, 108, 352.0)
    struct.pack_into(endian + "f", h, 112, slope)
    struct.pack_into(endian + "f", h, 116, inter)
    h[344:348] = magic
    return bytes(h) + b"\0\0\0\0"


def f32_scaled(endian="<"):
    # 4x3x2 float32, raw value = linear index except voxel (1,2,1) = 3.0.
    dims = (4, 3, 2)
    n = dims[0] * dims[1] * dims[2]
    raw = [float(i) for i in range(n)]
    raw[(1 * 3 + 2) * 4 + 1] = 3.0
    return nifti_header(dims, 16, 32, 2.0, 1.0, endian=endian) + struct.pack(
        endian + "%df" % n, *raw)


def i16_labels():
    # 5x4x3 int16 labels, value = (7i) mod 5 with BraTS-style ids {0,1,2,4}.
    dims = (5, 4, 3)
    n = dims[0] * dims[1] * dims[2]
    ids = [0, 1, 2, 4, 0]
    vals = [ids[(7 * i) % 5] for i in range(n)]
    return nifti_header(dims, 4, 16) + struct.pack("<%dh" % n, *vals)


def u8_two_channel():
    # 3x2x2x2 uint8, value = 10c + linear voxel index.
    dims = (3, 2, 2, 2)
    nv = 3 * 2 * 2
    vals = [10 * c + i for c in range(2) for i in range(nv)]
    return nifti_header(dims, 2, 8) + bytes(vals)


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))
    header, payload = svol_2ch()
    with open(os.path.join(out, "svol_2ch.json"), "w") as f:
        json.dump(header, f, indent=2)
        f.write("\n")
    with open(os.path.join(out, "svol_2ch.bin"), "wb") as f:
        f.write(payload)
    with open(os.path.join(out, "f32_scaled.nii"), "wb") as f:
        f.write(f32_scaled())
    with open(os.path.join(out, "f32_scaled_be.nii"), "wb") as f:
        f.write(f32_scaled(">"))
    with open(os.path.join(out, "labels_i16.nii.gz"), "wb") as f:
        f.write(gzip.compress(i16_labels(), mtime=0))
    with open(os.path.join(out, "u8_4d.nii"), "wb") as f:
        f.write(u8_two_channel())
    with open(os.path.join(out, "ni1_magic.nii"), "wb") as f:
        f.write(nifti_header((2, 2, 2), 16, 32, magic=b"ni1\0") + bytes(32))
    with open(os.path.join(out, "truncated.nii"), "wb") as f:
        f.write(f32_scaled()[:-6])


if __name__ == "__main__":
    main()
