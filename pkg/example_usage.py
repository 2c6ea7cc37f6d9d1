#!/usr/bin/env python3
"""
Example script demonstrating how to use hyperremoval as a module.
"""

from hyperremoval import KGraph, analyze, count_copies, hard_instance

# Example 1: Case analysis of C5
print("Example 1: Analysis")
print("-" * 50)
F = KGraph.cycle(5)
report = analyze(F)
print(f"Construction path: {report.lemma_path}, witness: {report.witness.to_dict()}\n")

# Example 2: Hard instance and its exact copy count
print("Example 2: Hard instance")
print("-" * 50)
inst = hard_instance(report.core, report.witness, n=30, seed=1)
total = count_copies(inst.graph, F).count
print(f"{len(inst.placed)} edge-disjoint copies placed, {total} copies in total\n")

# Example 3: The simplex path for K4^(3)
# print("Example 3: K4^(3)")
# print("-" * 50)
# F = KGraph.complete(3, 4)
# inst = hard_instance(F, analyze(F).witness, n=40)
# print(f"{len(inst.placed)} copies placed")
