"""Evolving finite-state update machines for density classification.

The heavy lifting lives in the compiled extension ``sasoca._core``; this
package re-exports its public names. Typical flow::

    import sasoca

    lat = sasoca.canonical_lattice("1d")
    layout = sasoca.StateLayout.for_inputs(lat.nbhd_size)
    genome = sasoca.random_genome(10000, 16, layout.total, sasoca.Rng(1))
    fsm = sasoca.compile_genome(genome, layout)
    ic = sasoca.gen_ic(lat, sasoca.IcScheme.BINOMIAL, sasoca.Rng(2))
    outcome, _ = sasoca.run_ic(fsm, lat, ic)
"""

from sasoca._core import *  # noqa: F401,F403
from sasoca._core import __version__  # noqa: F401
