# Copyright 2026 The nttkit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import random

import pytest

import nttkit


def negacyclic(a, b, q):
    n = len(a)
    c = [0] * n
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            k = i + j
            if k < n:
                c[k] += x * y
            else:
                c[k - n] -= x * y
    return [v % q for v in c]


def test_kyber_matches_python_oracle():
    plan = nttkit.preset("kyber")
    rng = random.Random(1)
    a = [rng.randrange(3329) for _ in range(256)]
    b = [rng.randrange(3329) for _ in range(256)]
    assert plan.multiply(a, b) == negacyclic(a, b, 3329)
    assert plan.ring == nttkit.Ring.negacyclic(256, 3329)


def test_signed_inputs_are_reduced():
    ring = nttkit.Ring("x^n+1", 8, 17)
    plan = nttkit.make_plan(ring)
    a = [-1, 0, 0, 0, 0, 0, 0, 0]
    b = [1, 2, 3, 4, 5, 6, 7, 8]
    assert plan.multiply(a, b) == [(-x) % 17 for x in b]


def test_round_trip_and_pointwise():
    plan = nttkit.preset("dilithium")
    rng = random.Random(2)
    a = [rng.randrange(8380417) for _ in range(256)]
    b = [rng.randrange(8380417) for _ in range(256)]
    a_hat = plan.forward(a)
    assert len(a_hat) == 256
    assert plan.inverse(a_hat) == a
    c = plan.inverse(plan.pointwise(a_hat, plan.forward(b)))
    assert c == nttkit.schoolbook(plan.ring, a, b)


def test_counts_for_full_transform():
    plan = nttkit.preset("kyber-r1")
    _, counts = plan.multiply_counted([1] * 256, [2] * 256)
    assert counts["forward_transforms"] == 2
    assert counts["inverse_transforms"] == 1


def test_presets_and_classes():
    names = nttkit.preset_names()
    assert {"kyber", "saber-m4", "ntru-701", "ntruprime-761-schonhage"} <= set(names)
    assert nttkit.classify(nttkit.Ring.negacyclic(256, 7681)) == "Pow2FullFriendly"
    assert "NonPow2" in nttkit.classify(nttkit.Ring.cyclic(701, 8192))


def test_saber_backends_agree():
    rng = random.Random(3)
    a = [rng.randrange(8192) for _ in range(256)]
    b = [rng.randint(-4, 4) for _ in range(256)]
    products = {tuple(nttkit.preset(n).multiply(a, b))
                for n in ("saber-m4", "saber-avx2", "saber-m3")}
    assert products == {tuple(negacyclic(a, b, 8192))}


def test_errors_carry_codes():
    with pytest.raises(nttkit.NttError) as info:
        nttkit.make_plan(nttkit.Ring.negacyclic(256, 3328))
    assert info.value.code == "NoStrategy"
    with pytest.raises(nttkit.NttError) as info:
        nttkit.preset("no-such-scheme")
    assert info.value.code == "UnknownPreset"
    with pytest.raises(ValueError):
        nttkit.preset("kyber").multiply([1, 2], [3, 4])
