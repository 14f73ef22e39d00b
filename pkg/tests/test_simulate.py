import numpy as np
import pytest

from mixednb.schema import VariableKind, parse_csv
from mixednb.simulate import ConditionSpec, SimulationPlan, default_plan, generate


class TestDefaultPlan:
    def test_condition_names_and_labels(self):
        plan = default_plan()
        assert [c.name for c in plan.conditions] == ["normal1", "fault1", "normal2", "fault2"]
        assert [c.label for c in plan.conditions] == [1, 2, 1, 2]

    def test_fault1_first_continuous(self):
        plan = default_plan()
        assert plan.conditions[1].continuous[0] == (3.50, 1.00)

    def test_normal1_parameters(self):
        plan = default_plan()
        assert [m for m, _ in plan.conditions[0].continuous] == [0.0] * 5
        assert [s for _, s in plan.conditions[0].continuous] == [1.50, 1.60, 0.80, 2.00, 1.40]

    def test_binary_rows(self):
        plan = default_plan()
        normal = plan.conditions[0].twovalued
        fault = plan.conditions[1].twovalued
        assert normal[0] == (0, 0.30) and fault[0] == (1, 0.30)
        assert normal[4] == (1, 0.10) and fault[4] == (0, 0.10)
        # fifth binary variable under fault flips 15% around base 1
        assert fault[3] == (1, 0.15)

    def test_sample_count(self):
        assert default_plan().samples_per_condition == 1500


class TestGenerate:
    def test_shapes_and_label_counts(self):
        train, test = generate(default_plan(seed=1))
        assert train.X.shape == (3000, 10)
        assert test.X.shape == (3000, 10)
        assert np.bincount(train.y)[1:].tolist() == [1500, 1500]
        assert np.bincount(test.y)[1:].tolist() == [1500, 1500]

    def test_schema_kinds(self):
        train, _ = generate(default_plan(seed=1))
        kinds = [v.kind for v in train.schema.variables]
        assert kinds[:5] == [VariableKind.CONTINUOUS] * 5
        assert kinds[5:] == [VariableKind.TWO_VALUED] * 5

    def test_exact_flip_counts(self):
        train, _ = generate(default_plan(seed=3))
        normal_block = train.X[:1500]
        fault_block = train.X[1500:]
        # base 0, 30% flips: exactly 450 ones; base 1, 10% flips: 1350 ones
        assert int(normal_block[:, 5].sum()) == 450
        assert int(normal_block[:, 9].sum()) == 1500 - 150
        assert int(fault_block[:, 5].sum()) == 1500 - 450
        assert int(fault_block[:, 9].sum()) == 150

    def test_zero_flip_fraction_constant(self):
        normal = ConditionSpec("c", 1, ((0.0, 1.0),), ((1, 0.0),))
        fault = ConditionSpec("d", 2, ((1.0, 1.0),), ((0, 0.0),))
        plan = SimulationPlan((normal, fault, normal, fault), 50, 0)
        train, _ = generate(plan)
        assert np.all(train.X[:50, 1] == 1.0)
        assert np.all(train.X[50:, 1] == 0.0)

    def test_reproducible_bytes(self):
        a_train, a_test = generate(default_plan(seed=9))
        b_train, b_test = generate(default_plan(seed=9))
        assert a_train.to_csv() == b_train.to_csv()
        assert a_test.to_csv() == b_test.to_csv()

    def test_different_seed_differs(self):
        a, _ = generate(default_plan(seed=1))
        b, _ = generate(default_plan(seed=2))
        assert a.to_csv() != b.to_csv()

    def test_continuous_means_converge(self):
        plan = default_plan(seed=4)
        train, _ = generate(plan)
        n = plan.samples_per_condition
        for j, (mean, std) in enumerate(plan.conditions[0].continuous):
            assert abs(train.X[:n, j].mean() - mean) < 4 * std / np.sqrt(n)
        for j, (mean, std) in enumerate(plan.conditions[1].continuous):
            assert abs(train.X[n:, j].mean() - mean) < 4 * std / np.sqrt(n)

    def test_csv_round_trip(self):
        train, _ = generate(default_plan(seed=2, samples_per_condition=40))
        again = parse_csv(train.to_csv(comment="seed=2"), train.schema)
        np.testing.assert_array_equal(train.X, again.X)
        np.testing.assert_array_equal(train.y, again.y)


def test_invalid_plan_rejected():
    with pytest.raises(Exception):
        ConditionSpec("bad", 1, ((0.0, -1.0),), ())
    with pytest.raises(Exception):
        ConditionSpec("bad", 1, (), ((2, 0.1),))
