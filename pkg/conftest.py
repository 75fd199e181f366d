"""Pytest wiring: set up Django the way ``manage.py test`` does."""

import os

import django


def pytest_configure(config):
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")
    django.setup()
    from django.test.utils import setup_databases, setup_test_environment

    setup_test_environment()
    config._django_db_config = setup_databases(verbosity=0, interactive=False)


def pytest_unconfigure(config):
    from django.test.utils import teardown_databases, teardown_test_environment

    db_config = getattr(config, "_django_db_config", None)
    if db_config is not None:
        teardown_databases(db_config, verbosity=0)
    teardown_test_environment()
