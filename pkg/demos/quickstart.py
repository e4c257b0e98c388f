"""Quickstart: score a hand-built backlink graph.

Builds a tiny webgraph around three tracked sites, groups them, and
walks through all eight maneuver scores for one of them.
"""

from bendweb import (
    DomainProfile,
    TargetGrouping,
    WebGraphSnapshot,
    compute_all,
)


def main():
    # Three sites we care about: two allies (thinkA, thinkB) and one
    # outsider (thinkC). Plus assorted backlinking domains.
    grouping = TargetGrouping({
        "allies": ["thinka.example", "thinkb.example"],
        "others": ["thinkc.example"],
    })

    earlier = WebGraphSnapshot("2025-q1", [
        ("thinka.example", "thinkb.example", 40),  # ally links ally
        ("thinka.example", "thinkc.example", 5),
        ("blog.example", "thinka.example", 30),
        ("blog.example", "thinkb.example", 12),    # co-amplifier
        ("news.example", "thinka.example", 20),
        ("spam.example", "thinka.example", 90),
    ])
    later = WebGraphSnapshot("2025-q2", [
        ("thinka.example", "thinkb.example", 40),
        ("thinka.example", "thinkc.example", 5),
        ("blog.example", "thinka.example", 28),    # lost 2
        ("blog.example", "thinkb.example", 12),
        ("news.example", "thinka.example", 5),     # lost 15
        ("spam.example", "thinka.example", 90),
    ])

    profiles = {
        "blog.example": DomainProfile("blog.example", 55),
        "news.example": DomainProfile("news.example", 80),
        "spam.example": DomainProfile("spam.example", 8),
    }

    print("Computing maneuver scores (static on 2025-q2, temporal vs 2025-q1)...\n")
    vectors = compute_all(later, grouping, profiles, t1=earlier)

    header = f"{'domain':<18}" + "".join(f"{name:>11}" for name in vectors[0].as_dict())
    print(header)
    print("-" * len(header))
    for v in vectors:
        cells = "".join(
            f"{value:>11.4f}" if value is not None else f"{'n/a':>11}"
            for value in v.as_dict().values()
        )
        print(f"{v.target:<18}{cells}")

    a = vectors[0]
    print(f"""
Reading thinka.example's row:
  back    {a.back:.3f}  most of its outlinks to tracked sites stay in-group
  bridge  {a.bridge:.3f}  a small share crosses to the other group
  boost   {a.boost:.3f}  blog.example also links its ally, so its volume co-amplifies
  negate  {a.negate:.3f}  the spam.example volume drags link-weighted authority down
  narrow  {a.narrow:.3f}  inbound volume is concentrated on one heavy source
  neglect {a.neglect:.3f}  it lost 17 of its backlinks relative to what remains""")


if __name__ == "__main__":
    main()
