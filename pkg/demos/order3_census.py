"""Every groupoid of order 3 with minimal spectrum, found by brute force."""
from minspec import algebra as alg
from minspec.search import scan_groupoids

report = scan_groupoids(3, mode="raw")
print(report.to_human())

# each survivor is some x*y = ax + by mod 3
for s in report.survivors:
    hits = [(a, b) for a in range(3) for b in range(3)
            if alg.are_isomorphic(s.algebra, alg.zab(3, a, b)) is not None]
    print(f"{str(s.structure):<22} ~ Zab 3 a b for (a, b) in {hits}")

# merging anti-isomorphic tables collapses the transposed pairs
merged = scan_groupoids(3, mode="pruned", allow_anti=True)
print("classes up to isomorphism or anti-isomorphism:", len(merged.survivors))
