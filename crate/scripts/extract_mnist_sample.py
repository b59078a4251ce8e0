#!/usr/bin/env python3
"""Write an IDX3 file of MNIST digits taken from the 5000-sample subset that
ships inside the mlxtend wheel (mlxtend/data/data/mnist_5k.csv.gz).

Usage: extract_mnist_sample.py WHEEL OUT [COUNT]

Images are interleaved by class (0,1,...,9,0,1,...) so any prefix of the
file is class-balanced.
"""
import gzip
import struct
import sys
import zipfile


def main():
    wheel, out = sys.argv[1], sys.argv[2]
    count = int(sys.argv[3]) if len(sys.argv) > 3 else 200
    raw = zipfile.ZipFile(wheel).read("mlxtend/data/data/mnist_5k.csv.gz")
    rows = [list(map(int, line.split(","))) for line in gzip.decompress(raw).decode().split()]
    by_class = {}
    for row in rows:
        by_class.setdefault(row[-1], []).append(row[:-1])
    images = []
    i = 0
    while len(images) < count:
        for label in sorted(by_class):
            if len(images) < count:
                images.append(by_class[label][i])
        i += 1
    with open(out, "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, len(images), 28, 28))
        for img in images:
            assert len(img) == 784
            f.write(bytes(img))


if __name__ == "__main__":
    main()
