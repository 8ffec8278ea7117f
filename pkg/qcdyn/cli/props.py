"""
Print the topological, map and dynamical profile of a finite system

The input file holds a space block (number of points, then one line per point
listing its minimal neighbourhood) followed by a line with the images
f(0) .. f(n-1). The report lists the separation properties of the space, the
continuity properties of the map, the seven transitivity and dense-orbit
properties with witnesses, and the functional graph of the map.
"""
import logging
import sys
from typing import Any, Dict, Optional

from ..bitset import format_mask, members
from ..dynamics import FLAG_NAMES, System, property_vector
from ..graph import FunctionalGraph
from ..maps import map_profile
from ..topology import space_profile
from . import dump_json, load_system

logger = logging.getLogger(__name__)

FLAG_LABELS = {
    "IN": "IN",
    "TT": "TT",
    "TTp": "TT+",
    "TTpp": "TT++",
    "DO": "DO",
    "DOp": "DO+",
    "DOpp": "DO++",
}


# fmt: off
def add_arguments(parser):
    add = parser.add_argument
    add("--json", metavar="FILE", default=None,
        help="Write the report in JSON format to FILE ('-' for standard output)")
    add("--quantifier", choices=("pi-base", "open"), default="pi-base",
        help="Quantify transitivity over pairs of pi-base elements (default) or over "
        "all pairs of nonempty open sets")
    add("system", metavar="SYSTEM", help="System file")
# fmt: on


def system_report(system: System, quantifier: str = "pi-base") -> Dict[str, Any]:
    space = system.space
    sp = space_profile(space)
    mp = map_profile(space, system.f)
    vector = property_vector(system, quantifier=quantifier)
    return {
        "n": system.n,
        "map": list(system.f),
        "space": {
            "T0": sp.T0,
            "T1": sp.T1,
            "T2": sp.T2,
            "perfect": sp.perfect,
            "fragmentable": sp.fragmentable,
            "baire": sp.baire,
            "iso": members(sp.iso),
        },
        "map_profile": {
            "continuous": mp.continuous,
            "quasicontinuous": mp.quasicontinuous,
            "feebly_open": mp.feebly_open,
            "delta_open": mp.delta_open,
            "qc_system": mp.qc_system,
            "continuity_points": members(mp.cont_points),
            "c_inf": members(mp.c_inf),
            "c_inf_orbit": members(mp.c_inf_orbit),
            "iterate_preperiod": mp.iterate_preperiod,
            "iterate_period": mp.iterate_period,
        },
        "properties": vector.flags(),
        "trans_points": members(vector.trans_points),
        "witnesses": vector.witnesses,
        "functional_graph": FunctionalGraph(system.f).summary(),
    }


def _yes(value: bool) -> str:
    return "yes" if value else "no"


def format_report(report: Dict[str, Any]) -> str:
    lines = [f"Space with {report['n']} points, map {' '.join(map(str, report['map']))}"]
    space = report["space"]
    lines.append(
        "Space: "
        + ", ".join(f"{name}: {_yes(space[name])}" for name in ("T0", "T1", "T2", "perfect"))
    )
    lines.append(f"Isolated points: {format_mask(sum(1 << x for x in space['iso']))}")
    mp = report["map_profile"]
    for name in ("continuous", "quasicontinuous", "feebly_open", "delta_open", "qc_system"):
        lines.append(f"{name.replace('_', ' ')}: {_yes(mp[name])}")
    for name, label in (
        ("continuity_points", "C(f)"),
        ("c_inf", "C_inf(f)"),
        ("c_inf_orbit", "C_inf_f"),
    ):
        lines.append(f"{label}: {{{', '.join(map(str, mp[name]))}}}")
    lines.append("Properties:")
    for name in FLAG_NAMES:
        value = report["properties"][name]
        witness = report["witnesses"].get(name)
        suffix = f"  ({witness})" if witness else ""
        lines.append(f"  {FLAG_LABELS[name]:5} {'✓' if value else '✗'}{suffix}")
    lines.append(f"Trans_f: {{{', '.join(map(str, report['trans_points']))}}}")
    graph = report["functional_graph"]
    lines.append(f"Cycles: {graph['cycles']}  sources: {graph['sources']}")
    return "\n".join(lines) + "\n"


def run_props(system: str, json: Optional[str] = None, quantifier: str = "pi-base", outfile=None):
    loaded = load_system(system)
    report = system_report(loaded, quantifier=quantifier)
    if json is not None:
        dump_json(report, json)
    if json != "-":
        (outfile or sys.stdout).write(format_report(report))
    return report


def main(args):
    run_props(**vars(args))
