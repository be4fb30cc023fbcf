from pathlib import Path

from src.core.config import CACHE_CONFIG, PERFORMANCE_CONFIG, load_settings


def test_defaults(monkeypatch, tmp_path):
    for name in ('GALCONJ_CACHE', 'GALCONJ_ELEMENT_BUDGET', 'GALCONJ_LOG_LEVEL'):
        monkeypatch.delenv(name, raising=False)
    settings = load_settings(str(tmp_path / 'missing.env'))
    assert settings.cache_dir == Path(CACHE_CONFIG['default_dir'])
    assert settings.element_budget == PERFORMANCE_CONFIG['element_budget']
    assert settings.log_level == 'WARNING'


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv('GALCONJ_CACHE', str(tmp_path))
    monkeypatch.setenv('GALCONJ_ELEMENT_BUDGET', '5000')
    monkeypatch.setenv('GALCONJ_LOG_LEVEL', 'debug')
    settings = load_settings(str(tmp_path / 'missing.env'))
    assert settings.cache_dir == tmp_path
    assert settings.element_budget == 5000
    assert settings.log_level == 'DEBUG'


def test_bad_budget_falls_back(monkeypatch, tmp_path):
    monkeypatch.setenv('GALCONJ_ELEMENT_BUDGET', 'lots')
    settings = load_settings(str(tmp_path / 'missing.env'))
    assert settings.element_budget == PERFORMANCE_CONFIG['element_budget']


def test_dotenv_file(monkeypatch, tmp_path):
    # registers GALCONJ_CACHE for restore once load_dotenv has set it
    monkeypatch.setenv('GALCONJ_CACHE', '')
    monkeypatch.delenv('GALCONJ_CACHE')
    env = tmp_path / '.env'
    env.write_text(f'GALCONJ_CACHE={tmp_path / "from-dotenv"}\n')
    settings = load_settings(str(env))
    assert settings.cache_dir == tmp_path / 'from-dotenv'
