from wittcalc.database import db


def test_polynomial_cache_round_trip(tmp_path):
    path = str(tmp_path / "cache.db")
    db.init_database(path)
    assert db.count_polynomials(path) == 0
    assert db.load_polynomials(3, 2, "sum", path) is None

    db.store_polynomials(3, 2, "sum", ["Symbol('a0') + Symbol('b0')", "Symbol('a1')"], path)
    assert db.load_polynomials(3, 2, "sum", path) == ["Symbol('a0') + Symbol('b0')", "Symbol('a1')"]
    assert db.count_polynomials(path) == 2

    db.store_polynomials(3, 2, "sum", ["Integer(0)", "Integer(1)"], path)
    assert db.count_polynomials(path) == 2

    db.clear_polynomial_cache(path)
    assert db.count_polynomials(path) == 0


def test_init_is_idempotent(tmp_path):
    path = str(tmp_path / "cache.db")
    db.init_database(path)
    db.init_database(path)
    assert db.count_polynomials(path) == 0
