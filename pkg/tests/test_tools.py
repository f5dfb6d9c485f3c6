import math

import pytest

from helpers import load_result


@pytest.mark.asyncio
async def test_tool_list(client):
    """
    Verify the tableau, model and experiment tools are registered.
    """
    tools = await client.list_tools()
    tool_names = [t.name for t in tools]

    expected_tools = [
        "tableau_check",
        "tableau_list",
        "equilibrium_state",
        "characteristic_speed_bounds",
        "run_experiment",
        "convergence_study",
        "benchmark",
    ]
    for tool in expected_tools:
        assert tool in tool_names


@pytest.mark.asyncio
async def test_tableau_list(client):
    result = load_result(await client.call_tool("tableau_list", {}))
    assert result["returncode"] == 0
    assert set(result["data"]) == {"ARS111", "ARS222", "CK222", "BPR442", "BPR343"}
    assert result["data"]["BPR442"] == "BPR442(4,4,2)"


@pytest.mark.asyncio
async def test_tableau_check(client):
    result = load_result(await client.call_tool("tableau_check", {"name": "BPR442"}))
    assert result["returncode"] == 0
    assert result["data"]["class"] == "ARS"
    assert result["metadata"]["gsa"] is True
    assert result["metadata"]["failed"] == []


@pytest.mark.asyncio
async def test_tableau_check_reports_failed_conditions(client):
    result = load_result(await client.call_tool("tableau_check", {"name": "CK222"}))
    assert result["returncode"] == 1
    assert result["metadata"]["failed"]


@pytest.mark.asyncio
async def test_tableau_check_unknown(client):
    result = load_result(await client.call_tool("tableau_check", {"name": "XYZ999"}))
    assert result["returncode"] == 2
    assert result["metadata"]["error_type"] == "TableauLookupError"


@pytest.mark.asyncio
async def test_equilibrium_state(client):
    result = load_result(
        await client.call_tool(
            "equilibrium_state", {"u": [0.0, 1.0], "epsilon": 1.0, "model": "ruijgrok_wu"}
        )
    )
    assert result["returncode"] == 0
    v_eq = result["data"]["v_eq"]
    assert v_eq[0] == 0.0
    assert v_eq[1] == pytest.approx(math.sqrt(2) - 1, abs=1e-12)


@pytest.mark.asyncio
async def test_equilibrium_state_unknown_model(client):
    result = load_result(
        await client.call_tool("equilibrium_state", {"u": [1.0], "epsilon": 1.0, "model": "x"})
    )
    assert result["returncode"] == 2


@pytest.mark.asyncio
async def test_characteristic_speed_bounds(client):
    result = load_result(
        await client.call_tool(
            "characteristic_speed_bounds", {"dt": 0.1, "epsilon": 0.0, "alpha": 1.0, "c": 1.0}
        )
    )
    assert result["returncode"] == 0
    assert result["data"]["lambda_plus"] == pytest.approx(1.0)
    assert result["data"]["lambda_minus"] == pytest.approx(0.0)
    assert result["metadata"]["tableau"] == "first_order"


@pytest.mark.asyncio
async def test_characteristic_speed_bounds_for_pair(client):
    result = load_result(
        await client.call_tool(
            "characteristic_speed_bounds",
            {"dt": 0.05, "epsilon": 1e-12, "alpha": 1.0, "tableau": "BPR343"},
        )
    )
    assert result["returncode"] == 0
    assert math.isfinite(result["data"]["bound"])


@pytest.mark.asyncio
async def test_characteristic_speed_bounds_invalid(client):
    result = load_result(
        await client.call_tool(
            "characteristic_speed_bounds", {"dt": 0.0, "epsilon": 0.0, "alpha": 1.0}
        )
    )
    assert result["returncode"] == 2


@pytest.mark.asyncio
async def test_run_experiment_tool(client):
    config = {
        "name": "tool",
        "model": {"name": "linear_gt"},
        "tableau": "ARS222",
        "grid": {"x_min": -math.pi, "x_max": math.pi, "n": 32},
        "bc": {"kind": "periodic"},
        "epsilon": 1e-6,
        "t_final": 0.02,
        "reference": {"kind": "exact"},
    }
    result = load_result(await client.call_tool("run_experiment", {"config": config}))
    assert result["returncode"] == 0, result["stderr"]
    assert result["data"]["diagnostics"]["pair"] == "ARS222"
    assert result["data"]["errors"]["l1_u"] < 1e-2


@pytest.mark.asyncio
async def test_run_experiment_tool_rejects_unknown_keys(client):
    result = load_result(await client.call_tool("run_experiment", {"config": {"typo": 1}}))
    assert result["returncode"] == 2
