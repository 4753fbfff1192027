"""Tests for logs, tracing and config modules."""

from alm_workbench import config, logs
from alm_workbench.tracing import algebra_span, span_attributes


class TestLog:
    """Tests for stderr and debug-file logging."""

    def test_log_writes_stderr(self, capsys) -> None:
        logs.log("hello")
        assert "hello" in capsys.readouterr().err

    def test_log_tags_the_algebra(self, capsys, chain2) -> None:
        logs.log("checked", alg=chain2)
        assert "chain2 (n=2): checked" in capsys.readouterr().err

    def test_debug_only_is_silent(self, capsys, monkeypatch) -> None:
        monkeypatch.setattr(config, "DEBUG", False)
        logs.log("quiet", debug_only=True)
        assert capsys.readouterr().err == ""

    def test_debug_log_file(self, tmp_path, monkeypatch, paper4) -> None:
        path = tmp_path / "nested" / "debug.log"
        monkeypatch.setattr(config, "DEBUG", True)
        monkeypatch.setattr(config, "DEBUG_LOG_PATH", path)
        logs.debug_log("details", alg=paper4)
        assert "paper-4elem (n=4): details" in path.read_text(encoding="utf-8")

    def test_debug_log_off(self, tmp_path, monkeypatch) -> None:
        path = tmp_path / "debug.log"
        monkeypatch.setattr(config, "DEBUG", False)
        monkeypatch.setattr(config, "DEBUG_LOG_PATH", path)
        logs.debug_log("details")
        assert not path.exists()


class TestTracing:
    """Tests for span naming."""

    def test_attributes_are_namespaced(self) -> None:
        assert span_attributes({"order": 3, "service.name": "x"}) == {
            "alm.order": 3,
            "service.name": "x",
        }
        assert span_attributes(None) == {}

    def test_algebra_span_yields_a_span(self, boolean4) -> None:
        with algebra_span("check", boolean4, strategy="tables") as span:
            span.set_attribute("alm.failures", 0)


class TestConfig:
    """Tests for environment parsing."""

    def test_env_int_fallback(self, monkeypatch) -> None:
        monkeypatch.setenv("ALM_TEST_BOUND", "many")
        assert config._env_int("ALM_TEST_BOUND", 7) == 7
        monkeypatch.setenv("ALM_TEST_BOUND", "9")
        assert config._env_int("ALM_TEST_BOUND", 7) == 9

    def test_env_flag(self, monkeypatch) -> None:
        monkeypatch.setenv("ALM_TEST_FLAG", "Yes")
        assert config._env_flag("ALM_TEST_FLAG")
        monkeypatch.delenv("ALM_TEST_FLAG")
        assert not config._env_flag("ALM_TEST_FLAG")
