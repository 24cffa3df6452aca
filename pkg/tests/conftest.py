import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

import wmk.k0
from wmk.graph import Edge, WeightedGraph, bundled_graph, bundled_names

# Record every Smith decomposition computed during the session so that all of
# them can be replayed, not only the ones a test inspects directly.
SNF_LOG = []
_snf = wmk.k0.smith_normal_form


def _recording_snf(A, ncols=None):
    out = _snf(A, ncols)
    SNF_LOG.append(out)
    return out


wmk.k0.smith_normal_form = _recording_snf

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

REFERENCE_GRAPHS = ["fork_22", "fork_12", "double_edge_12", "loops_12", "rose_3333", "rose_2333"]


@pytest.fixture(params=bundled_names())
def any_bundled(request):
    return bundled_graph(request.param)


@st.composite
def weighted_graphs(draw, max_vertices=4, max_edges=6, max_weight=4):
    n = draw(st.integers(1, max_vertices))
    vertices = [f"v{i}" for i in range(n)]
    m = draw(st.integers(0, max_edges))
    edges = [
        Edge(
            f"e{j}",
            draw(st.sampled_from(vertices)),
            draw(st.sampled_from(vertices)),
            draw(st.integers(1, max_weight)),
        )
        for j in range(m)
    ]
    return WeightedGraph(tuple(vertices), tuple(edges))


def pytest_sessionfinish(session, exitstatus):
    bad = sum(1 for d in SNF_LOG if not d.replay())
    reporter = session.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.write_line(f"SNF replay: {len(SNF_LOG) - bad}/{len(SNF_LOG)} decompositions verified")
    if bad:
        session.exitstatus = 1
