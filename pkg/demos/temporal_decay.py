"""Temporal scores: watching backlinks disappear between two snapshots.

neutralize asks *whose* links were lost (in-group share of losses);
neglect asks *how much* was lost relative to what remains. This script
decays one group's inbound links at several fractions and tracks both.
"""

from bendweb import (
    PlantedManeuver,
    ScenarioSpec,
    generate,
    neglect,
    neutralize,
)


def main():
    print(f"{'fraction':>9} {'mean neglect':>13} {'f/(1-f)':>9} {'mean neutralize':>16}")
    for fraction in (0.1, 0.25, 0.5, 0.75, 0.9):
        spec = ScenarioSpec(
            seed=3,
            n_targets=9,
            n_groups=3,
            background_backlinkers=40,
            background_link_rate=0.3,
            planted=(PlantedManeuver(kind="decay", group="G0", fraction=fraction),),
        )
        scenario = generate(spec)
        members = sorted(scenario.grouping.members_of("G0"))
        neglects = [neglect(scenario.t1, scenario.t2, m) for m in members]
        neutralizes = [
            neutralize(scenario.t1, scenario.t2, scenario.grouping, m) for m in members
        ]
        mean_neglect = sum(neglects) / len(neglects)
        mean_neutralize = sum(neutralizes) / len(neutralizes)
        ideal = fraction / (1 - fraction) if fraction < 1 else float("inf")
        print(f"{fraction:>9.2f} {mean_neglect:>13.4f} {ideal:>9.4f} {mean_neutralize:>16.4f}")

    print("""
neglect climbs toward f/(1-f): at fraction 0.5 a site has lost roughly
as many links as it kept. Removal floors per edge, so small fractions
on small volumes round to zero links lost (the 0.10 row). neutralize
stays near zero throughout because the losses come from background
backlinkers, not from the group's own members; it reacts to in-group
losses specifically.""")


if __name__ == "__main__":
    main()
