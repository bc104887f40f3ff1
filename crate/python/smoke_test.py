"""Smoke test for the pyramsey extension module.

Build and install first:  pip install --no-build-isolation -e crates/py
"""

import pyramsey as pr


def main():
    assert pr.parse_targets("K3,J4,K3e") == ["K3", "J4", "K3e"]

    c5 = pr.Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert c5.edge_count() == 5
    assert c5.is_isomorphic(c5.complement())
    assert c5.canonical_key() == c5.complement().canonical_key()
    assert pr.Graph.from_graph6(c5.to_graph6()) == c5
    assert not c5.contains("K3") and c5.is_good("K3", "K3")

    k5 = pr.Graph.named("CLIQUE(5)")
    assert k5.count_copies("K3") == 10
    assert k5.count_copies("K5mP3") == 30

    stats = pr.enumerate_stats("K3", "J7", 8)
    assert [s[1] for s in stats] == [1, 2, 3, 7, 14, 38, 105, 392]
    assert stats[7][2:] == (3, 16)
    assert len(pr.good_graphs("K3", "K3", 5)) == 1

    j7 = pr.Graph.named("J7")
    assert pr.arrows(j7, "K3e,J4")
    assert pr.arrows(j7, ["K3e", "J4"], engine="recurse")
    witness = pr.split(c5, "K3,K3")
    assert witness is not None and len(witness) == 5
    assert "p cnf 6 10" in pr.split_cnf(pr.Graph.named("K4"), "K3", "J4").splitlines()

    schlafli = pr.Graph.named("SCHLAFLI")
    assert schlafli.order == 27 and all(schlafli.degree(v) == 10 for v in range(27))
    assert pr.split(schlafli, "J4,J4") is not None
    assert pr.arrows(schlafli.complement(), "K3,J4")

    fig3 = pr.EdgeColoring.figure(3)
    assert fig3.order == 20 and fig3.is_valid("K3,J4,J4")
    assert pr.EdgeColoring.figure(4).is_valid(["J4", "J4", "K4"])
    assert fig3.color_class(0).edge_count() == 60

    found, energy = pr.anneal(5, "K3,K3")
    assert found is not None and energy == 0 and found.is_valid("K3,K3")
    none, best = pr.anneal(6, "K3,K3", restarts=4, max_sweeps=100)
    assert none is None and best >= 2

    toy = pr.EdgeColoring.from_matrix("0 2 1\n2 0 1\n1 1 0\n")
    k4 = toy.clone_vertex(0, 1, 1)
    assert sorted(k4.color_class(1).edges()) == [(0, 1), (0, 3), (1, 3)]
    assert k4.remove_vertex(3) == toy

    for check in ["lemma-hex", "figure3", "schlafli"]:
        passed, report = pr.verify(check)
        assert passed, report

    try:
        pr.Graph(65)
    except ValueError:
        pass
    else:
        raise AssertionError("65 vertices accepted")

    print("pyramsey smoke test passed")


if __name__ == "__main__":
    main()
