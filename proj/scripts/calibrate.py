#!/usr/bin/env python3
"""Calibrate and verify the synthetic-network generator composition.

The published evaluation network is described by per-location building
blocks whose exact mix is not stated; only aggregate totals are. This
script (a) recomputes the totals a parameter set produces, (b) searches the
small integer knob space for compositions that hit the targets, and (c)
verifies the committed defaults against a real `mlpce` binary when one is
available.

Targets (15 locations):
  elements 2955, tech/layer nodes 10455, hub nodes 480, adaptation edges
  10380, physical links 5393, special edges 3540, total edges 19313.
"""

import argparse
import itertools
import json
import shutil
import subprocess
import sys
import tempfile

TARGETS = {
    "elements": 2955,
    "tech_layer_nodes": 10455,
    "hub_nodes": 480,
    "adaptation_edges": 10380,
    "physical_edges": 5393,
    "special_edges": 3540,
    "total_edges": 19313,
}

DEFAULTS = {
    "locations": 15,
    "metro_core_nodes": 4,
    "agg_ring_pairs": 2,
    "access_rings": 5,
    "agg_dh_pairs": 2,
    "dh_chain_nodes": 4,
    "access_dh_per_span": 2,
    "random_agg_ring_pairs": 1,
    "linear_chain_pairs": 28,
    "eth_ring_sizes": [11, 11, 11, 11, 11, 11, 10, 10],
    "eth_dh_rings": 4,
    "eth_core_ring_nodes": 5,
    "nld_links": 23,
}


def totals(p):
    """Mirror of the generator's per-location accounting."""
    L = p["locations"]
    mc = p["metro_core_nodes"]
    spans = p["dh_chain_nodes"] - 1
    ern = sum(s - 1 for s in p["eth_ring_sizes"])
    erl = sum(p["eth_ring_sizes"])
    ecr = p["eth_core_ring_nodes"]

    dual = (2 * p["agg_ring_pairs"] + p["access_rings"]
            + p["dh_chain_nodes"] * p["agg_dh_pairs"]
            + 2 * p["agg_dh_pairs"] * spans * p["access_dh_per_span"]
            + 4 * p["random_agg_ring_pairs"] + 2 * p["linear_chain_pairs"])
    eth = ern + 2 * p["eth_dh_rings"] + ecr
    elements = L * (1 + mc + dual + eth)

    mesh = mc * (mc - 1) // 2
    links_per_loc = (mesh + 2 + 6 * p["agg_ring_pairs"] + 4 * p["access_rings"]
                     + (2 * spans + 4) * p["agg_dh_pairs"]
                     + 6 * p["agg_dh_pairs"] * spans * p["access_dh_per_span"]
                     + 10 * p["random_agg_ring_pairs"]
                     + 4 * p["linear_chain_pairs"]
                     + erl + 3 * p["eth_dh_rings"] + (ecr + 1 if ecr else 0))
    nld = min(p["nld_links"], L * (L - 1) // 2) if L >= 2 else 0
    links = L * links_per_loc + nld

    special = L * (2 * p["agg_ring_pairs"] + 2 * p["access_rings"]
                   + 2 * p["dh_chain_nodes"] * p["agg_dh_pairs"]
                   + 8 * p["agg_dh_pairs"] * spans * p["access_dh_per_span"]
                   + 6 * p["random_agg_ring_pairs"]
                   + ern + 4 * p["eth_dh_rings"]
                   + (ecr * (ecr - 1) // 2 if ecr else 0))
    hubs = L * (2 * p["agg_dh_pairs"]
                + 2 * p["agg_dh_pairs"] * spans * p["access_dh_per_span"]
                + p["eth_dh_rings"])
    nodes = L * (4 * (1 + mc) + 4 * dual + 3 * eth)
    adapt = L * (3 * (1 + mc) + 4 * dual + 3 * eth)
    return {
        "elements": elements,
        "tech_layer_nodes": nodes,
        "hub_nodes": hubs,
        "adaptation_edges": adapt,
        "physical_edges": links,
        "special_edges": special,
        "total_edges": adapt + links + special,
    }


def within(got, want, tol):
    return want * (1 - tol) <= got <= want * (1 + tol)


def check(p, tol=0.05):
    t = totals(p)
    rows = []
    ok = True
    for k, want in TARGETS.items():
        got = t[k]
        exact = k == "elements"
        good = got == want if exact else within(got, want, tol)
        ok &= good
        rows.append((k, got, want, "exact" if got == want else
                     ("ok" if good else "OUT")))
    return ok, rows


def search():
    """Walk the knob space near the published composition. The element
    classes fix dual-tech and ETH-only budgets per location (101 / 91);
    the remaining freedom is how rings, chains and spurs split them."""
    best = []
    for (agg, acc, dh, adspan, rnd, lin, edr, ecr) in itertools.product(
            range(1, 4), range(0, 9), range(1, 4), range(0, 4),
            range(0, 3), range(0, 41), range(0, 9), [0, 3, 4, 5, 6]):
        p = dict(DEFAULTS)
        p.update(agg_ring_pairs=agg, access_rings=acc, agg_dh_pairs=dh,
                 access_dh_per_span=adspan, random_agg_ring_pairs=rnd,
                 linear_chain_pairs=lin, eth_dh_rings=edr,
                 eth_core_ring_nodes=ecr)
        t = totals(p)
        if t["elements"] != TARGETS["elements"]:
            continue
        if t["hub_nodes"] != TARGETS["hub_nodes"]:
            continue
        # close the ETH ring budget: nodes and links to make the remaining
        # counts work out, split into rings of 10/11
        need_nodes = 91 - 2 * edr - ecr
        sp_left = (TARGETS["special_edges"] // 15
                   - (2 * agg + 2 * acc + 2 * p["dh_chain_nodes"] * dh
                      + 8 * dh * (p["dh_chain_nodes"] - 1) * adspan + 6 * rnd
                      + 4 * edr + (ecr * (ecr - 1) // 2 if ecr else 0)))
        if need_nodes < 0 or sp_left != need_nodes:
            continue
        links_left = (TARGETS["physical_edges"] - 23) // 15 - (
            6 + 2 + 6 * agg + 4 * acc
            + (2 * (p["dh_chain_nodes"] - 1) + 4) * dh
            + 6 * dh * (p["dh_chain_nodes"] - 1) * adspan + 10 * rnd
            + 4 * lin + 3 * edr + (ecr + 1 if ecr else 0))
        n_rings = links_left - need_nodes
        if n_rings <= 0 or need_nodes < n_rings:
            continue
        base, extra = divmod(need_nodes + n_rings, n_rings), \
            (need_nodes + n_rings) % n_rings
        base = (need_nodes + n_rings) // n_rings
        sizes = [base + 1] * extra + [base] * (n_rings - extra)
        if any(s < 2 for s in sizes):
            continue
        p["eth_ring_sizes"] = sizes
        ok, _ = check(p, tol=0.0)
        if ok:
            best.append(p)
            if len(best) >= 20:
                break
    return best


def verify_binary(binary):
    params = dict(DEFAULTS)
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
        json.dump(params, f)
        pfile = f.name
    with tempfile.NamedTemporaryFile(suffix=".topo", delete=False) as f:
        tfile = f.name
    out = subprocess.run(
        [binary, "generate", "--params", pfile, "--seed", "42",
         "--out", tfile, "--print-counts"],
        check=True, capture_output=True, text=True)
    got = json.loads(out.stdout)
    ok = True
    for k, want in TARGETS.items():
        if k == "elements":
            continue
        if got.get(k) != want and k in got:
            print(f"  binary {k}: got {got[k]} want {want}")
            ok = (abs(got[k] - want) <= 0.05 * want) and ok
    print("binary verification:", "ok" if ok else "FAILED")
    return ok


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--search", action="store_true",
                    help="enumerate alternative exact compositions")
    ap.add_argument("--binary", default="",
                    help="mlpce binary to cross-check (default: skip)")
    args = ap.parse_args()

    ok, rows = check(DEFAULTS)
    print("committed defaults:")
    for k, got, want, verdictt in rows:
        print(f"  {k:20s} {got:6d}  target {want:6d}  {verdictt}")
    print("overall:", "ok" if ok else "FAILED")

    if args.search:
        found = search()
        print(f"\n{len(found)} exact composition(s) found; first few:")
        for p in found[:5]:
            keys = ["agg_ring_pairs", "access_rings", "agg_dh_pairs",
                    "access_dh_per_span", "random_agg_ring_pairs",
                    "linear_chain_pairs", "eth_dh_rings",
                    "eth_core_ring_nodes", "eth_ring_sizes"]
            print(" ", {k: p[k] for k in keys})

    if args.binary:
        binary = shutil.which(args.binary) or args.binary
        if not verify_binary(binary):
            sys.exit(1)
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
