import pytest

import heptagrid as hg


def test_fibonacci_words():
    assert hg.encode(10) == "10010"
    assert hg.decode("10010") == 10
    assert hg.succ("1010") == "10000"
    assert hg.pred("10000") == "1010"
    assert [hg.fib(j) for j in range(1, 7)] == [1, 2, 3, 5, 8, 13]
    for n in range(1, 300):
        assert hg.decode(hg.encode(n)) == n
    with pytest.raises(ValueError):
        hg.decode("110")


def test_neighbours_of_a_tile():
    assert hg.neighbors("0:1") == [f"{s}:1" for s in range(1, 8)]
    nb = hg.neighbors("1:100")
    assert nb[0] == "1:1"
    assert len(set(nb)) == 7


def test_routes():
    route = hg.shortest("1:1", "4:1")
    assert len(route) - 1 == 2
    assert hg.route_tiles("1:1", route) == ["1:1", "0:1", "4:1"]
    assert hg.route_text(route) == "(0,1)(1,4)(1,0)"
    assert hg.pathroot("3:1") == [(0, 3), (1, 0)]
    assert hg.route_tiles("0:1", hg.leftmost(hg.pathroot("1:10010")))[-1] == "1:10010"
    with pytest.raises(ValueError):
        hg.shortest("2:1", "2:1")


def test_space():
    sp = hg.Space(5)
    assert len(sp) == 1625
    assert sp.depth == 5
    assert sp.index("0:1") == 0
    assert sp.index("1:100000000000") is None
    i = sp.index("2:101")
    assert sp.coord(i) == "2:101"
    for g, n in enumerate(sp.neighbours(i), start=1):
        assert sp.neighbours(n)[sp.associates(i)[g - 1] - 1] == i
    assert sp.status(0) == "central"


def test_run_report():
    report = hg.run(depth=4, iterations=40)
    assert report.tiles == len(hg.Space(4))
    snaps = report.snapshots()
    assert len(snaps) == 41
    assert report.totals["sent"] == sum(s["public"] + s["reply"] + s["write"] for s in snaps)
    assert report.csv().splitlines()[0] == "t,n_public,n_reply,n_write,n_erase,in_flight,max_per_tile,argmax"
    assert "tiles: " in report.summary()
    assert hg.run(depth=4, iterations=40, threads=2).csv() == report.csv()
    with pytest.raises(TypeError):
        hg.run(colour="red")
    with pytest.raises(ValueError):
        hg.run(lambda_public=-1.0)
