import json

import pytest
from hypothesis import given, strategies as st

from homcls import io
from homcls.cochains import Cochain, CoeffGroup, Z, cohomology_group
from homcls.homotopy import HomotopyEngine
from homcls.postnikov import sphere3_data
from homcls.simplicial import minimal_sphere

from support import random_null_map

BUNDLED = ["s3", "s4", "dd4", "rp2", "torus7", "wedge_s4_s3"]


@given(st.integers(-2 ** 80, 2 ** 80))
def test_int_roundtrip(v):
    enc = io.encode_int(v)
    assert io.decode_int(json.loads(json.dumps(enc))) == v
    assert isinstance(enc, str) == (abs(v) >= 2 ** 53)


def test_decode_rejects_junk():
    for bad in [True, 1.5, "x", None]:
        with pytest.raises(io.FormatError):
            io.decode_int(bad)


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_spaces_roundtrip(name):
    x = io.load_space(io.data_path(name + ".json"))
    y = io.space_from_json(json.loads(json.dumps(io.space_to_json(x))))
    assert y.simplices == x.simplices and y.faces == x.faces and y.basepoint == x.basepoint


def test_version_checks():
    obj = io.space_to_json(minimal_sphere(3))
    obj["schema_version"] = 2
    with pytest.raises(io.FormatError, match="schema_version"):
        io.space_from_json(obj)
    del obj["schema_version"]
    assert io.space_from_json(obj).counts() == [1, 0, 0, 1]


def test_space_errors():
    with pytest.raises(io.FormatError):
        io.space_from_json({"format": "mesh"})
    with pytest.raises(io.FormatError):
        io.space_from_json({"format": "simplicial_complex", "facets": [[]]})
    with pytest.raises(io.FormatError):
        io.space_from_json({"format": "simplicial_set", "simplices": {"0": ["v"]}})
    with pytest.raises(io.FormatError):
        io.space_from_json({"format": "simplicial_set", "simplices": {"0": ["v"], "1": ["e"]},
                            "faces": {"e": [[[], "v"]]}, "basepoint": "v"})


def test_cochain_roundtrip_with_big_values(spaces):
    x = spaces["torus"]
    big = 3 ** 60
    c = Cochain(x, 1, CoeffGroup.parse("Z+Z/5"), {s: (big * (i + 1), i) for i, s in enumerate(x.nondegenerate(1))})
    obj = json.loads(json.dumps(io.cochain_to_json(c)))
    assert io.cochain_from_json(obj, x) == c
    with pytest.raises(io.FormatError):
        io.cochain_from_json({"dim": 1, "coeff": {"free_rank": 1}, "values": {"nope": [1]}}, x)


def test_map_roundtrip():
    x = y = minimal_sphere(3)
    f = io.map_from_json(io.read_json(io.data_path("const_s3.json")), x, y)
    assert f["s3"].word == (2, 1, 0)
    assert io.map_from_json(io.map_to_json(f, y), x, y) == f
    g = {"v": f["v"], "s3": f["s3"]._replace(word=())}
    with pytest.raises(io.FormatError):
        io.map_from_json({"assignments": {"zz": "*"}}, x, y)
    with pytest.raises(io.FormatError):
        io.map_from_json({"assignments": {"v": 3}}, x, y)
    assert io.map_from_json({"assignments": {"v": "*", "s3": [[2, 1, 0], "v"]}}, x, y) == f
    assert g["s3"].word == ()


def test_group_json(spaces):
    g = cohomology_group(spaces["torus"], 1, Z)
    obj = json.loads(json.dumps(io.group_to_json(g)))
    assert io.group_from_json(obj) == ((), 2)


def test_certificate_roundtrip(spaces):
    data = sphere3_data()
    eng = HomotopyEngine(data)
    x = spaces["dd4"]
    import random
    m = random_null_map(eng, x, random.Random(3))
    b = eng.nullhoa(m)
    obj = json.loads(json.dumps(io.certificate_to_json(b, "sphere:3", m)))
    cert, source = io.certificate_from_json(obj)
    check = HomotopyEngine(data)
    assert check.is_valid(cert)
    assert check.restrict_to_base(cert).components == source.components
    assert [c.values for c in source.components] == [c.values for c in m.components]
    with pytest.raises(io.FormatError):
        io.certificate_from_json({"format": "cone_map", "schema_version": 7})
