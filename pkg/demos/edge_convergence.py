"""Near the edge, rescaled kernel entries approach p-Airy quantities.

Each table lists the finite-epsilon value, its limit and the gap. For p = 2
the errors fall steadily. For p = 4 the floor that maps x to a lattice site
shifts the effective point by up to epsilon, which makes the raw error jump
around along the schedule.
"""

from shiftedschur.scaling import converge


def show(report):
    print(f"\n{report.target}, p = {report.p}")
    for eps, arg, value, limit, err in report.rows:
        print(f"  eps {eps:.4f}  arg {arg:>4}  {value: .8f}  {limit: .8f}  {err:.1e}")
    print(f"  monotone: {report.monotone_flags}")


show(converge(2, "j", args=[(-1.0,), (0.0,), (1.0,)]))
show(converge(4, "j", args=[(0.0,)]))
show(converge(2, "kernel", args=[(0.0, 1.0)]))
show(converge(2, "pfdet", args=[(0.0, 1.0)]))
