import pytest

from rqcdesign import LatticeSpec, build_dual, build_lattice


@pytest.fixture(scope="session")
def grid5():
    return build_lattice(LatticeSpec(mode="grid", width=5, height=5))


@pytest.fixture(scope="session")
def grid5_dual(grid5):
    return build_dual(grid5)


@pytest.fixture(scope="session")
def grid4():
    return build_lattice(LatticeSpec(mode="grid", width=4, height=4))


@pytest.fixture(scope="session")
def grid4_dual(grid4):
    return build_dual(grid4)


def flood_fill_components(lattice, removed_bonds):
    """Connected components of the present qubits once the given bonds are
    removed; independent check for the ray-cast side assignment."""
    adj = {q: set() for q in range(lattice.n_qubits)}
    removed = set(removed_bonds)
    for bond in lattice.bonds:
        if bond.id not in removed:
            adj[bond.a].add(bond.b)
            adj[bond.b].add(bond.a)
    seen = set()
    components = []
    for start in range(lattice.n_qubits):
        if start in seen:
            continue
        stack = [start]
        comp = set()
        while stack:
            q = stack.pop()
            if q in comp:
                continue
            comp.add(q)
            stack.extend(adj[q] - comp)
        seen |= comp
        components.append(frozenset(comp))
    return components
