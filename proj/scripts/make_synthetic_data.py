#!/usr/bin/env python3
"""Generate synthetic stand-in dataset files under data/.

The generated files mimic the three UCI benchmark datasets in format and in
the marginal statistics the toolkit's loaders and tests rely on:

  haberman.data                306 rows, 3 features, classes 225/81
  breast-cancer-wisconsin.data 699 rows, id + 9 features, classes 458/241,
                               exactly 16 rows with "?" in the bare-nuclei
                               column (14 benign, 2 malignant)
  seeds_dataset.txt            210 rows, 7 features, classes 70/70/70

Feature values are class-correlated so trained trees behave sensibly, but the
rows are NOT the real measurements. Run scripts/fetch_datasets.sh to replace
these files with the genuine UCI data.
"""

import random
import os

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "data")

rng = random.Random(20240817)


def clamp(v, lo, hi):
    return max(lo, min(hi, v))


def write_haberman(path):
    rows = []
    # class 1 = survived 5+ years (225), class 2 = died within 5 years (81)
    for _ in range(225):
        age = int(clamp(rng.gauss(51, 10), 30, 77))
        year = rng.randint(58, 69)
        nodes = 0 if rng.random() < 0.55 else int(clamp(rng.expovariate(0.45), 0, 28))
        rows.append((age, year, nodes, 1))
    for _ in range(81):
        age = int(clamp(rng.gauss(55, 10), 34, 83))
        year = rng.randint(58, 69)
        nodes = 0 if rng.random() < 0.18 else int(clamp(rng.expovariate(0.12), 0, 52))
        rows.append((age, year, nodes, 2))
    rng.shuffle(rows)
    with open(path, "w") as f:
        for r in rows:
            f.write("%d,%d,%d,%d\n" % r)


def write_wisconsin(path):
    rows = []

    def benign_feature():
        return int(clamp(rng.gauss(2.0, 1.4), 1, 10))

    def malignant_feature():
        return int(clamp(rng.gauss(6.8, 2.3), 1, 10))

    for _ in range(458):
        rows.append([benign_feature() for _ in range(9)] + [2])
    for _ in range(241):
        rows.append([malignant_feature() for _ in range(9)] + [4])
    rng.shuffle(rows)

    # exactly 16 rows get "?" in bare nuclei (feature index 5): 14 benign, 2 malignant
    benign_idx = [i for i, r in enumerate(rows) if r[-1] == 2]
    malignant_idx = [i for i, r in enumerate(rows) if r[-1] == 4]
    missing = rng.sample(benign_idx, 14) + rng.sample(malignant_idx, 2)
    for i in missing:
        rows[i][5] = "?"

    with open(path, "w") as f:
        for i, r in enumerate(rows):
            f.write("%d,%s\n" % (1000000 + i * 7 + rng.randint(0, 4),
                                 ",".join(str(v) for v in r)))


SEED_PROFILES = {
    # class: (area, perimeter, compactness, kernel_len, kernel_w, asymmetry, groove_len)
    1: [(14.33, 1.21), (14.29, 0.58), (0.880, 0.015), (5.51, 0.23),
        (3.25, 0.18), (2.67, 1.10), (5.09, 0.26)],   # Kama
    2: [(18.33, 1.44), (16.14, 0.62), (0.884, 0.016), (6.15, 0.27),
        (3.68, 0.19), (3.64, 1.20), (6.02, 0.25)],   # Rosa
    3: [(11.87, 0.72), (13.25, 0.34), (0.849, 0.021), (5.23, 0.14),
        (2.85, 0.15), (4.79, 1.30), (5.12, 0.16)],   # Canadian
}


def write_seeds(path):
    rows = []
    for cls in (1, 2, 3):
        prof = SEED_PROFILES[cls]
        for _ in range(70):
            vals = [rng.gauss(mu, sd) for mu, sd in prof]
            vals[2] = clamp(vals[2], 0.80, 0.92)
            rows.append((vals, cls))
    rng.shuffle(rows)
    with open(path, "w") as f:
        for vals, cls in rows:
            f.write("%.2f\t%.2f\t%.4f\t%.3f\t%.3f\t%.4f\t%.3f\t%d\n"
                    % (vals[0], vals[1], vals[2], vals[3], vals[4], vals[5], vals[6], cls))


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    write_haberman(os.path.join(OUT_DIR, "haberman.data"))
    write_wisconsin(os.path.join(OUT_DIR, "breast-cancer-wisconsin.data"))
    write_seeds(os.path.join(OUT_DIR, "seeds_dataset.txt"))
    print("wrote synthetic stand-ins to", os.path.normpath(OUT_DIR))


if __name__ == "__main__":
    main()
