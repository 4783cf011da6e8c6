#!/usr/bin/env python3
"""
Configuration utility module for qholo jobs.

This module provides functions to load configuration from TOML files,
with fallback to base configuration and QHOLO_* environment variables.
"""

import os
import toml
from dotenv import load_dotenv
from pathlib import Path
from typing import Dict, Any, List, Optional

JOBS_DIR = Path(__file__).resolve().parent.parent / "jobs"
ENV_PREFIX = "QHOLO_"


def load_base_config() -> Dict[str, Any]:
    """Load base configuration from jobs/base.toml"""
    base_config_path = JOBS_DIR / "base.toml"
    if not base_config_path.exists():
        raise FileNotFoundError(f"Base config file not found: {base_config_path}")

    with open(base_config_path, "r") as f:
        return toml.load(f)


def job_config_path(job: str) -> Path:
    """Path of a job's config.toml"""
    if job == "" or job is None:
        raise ValueError("Job name cannot be empty or null")
    return JOBS_DIR / job / "config.toml"


def load_job_config(job: Optional[str]) -> Dict[str, Any]:
    """Load a job's config.toml file"""
    config_path = job_config_path(job)
    if not config_path.exists():
        raise FileNotFoundError(f"Job config file not found: {config_path}")

    with open(config_path, "r") as f:
        return toml.load(f)


def list_jobs() -> List[str]:
    """Names of the jobs that ship a config.toml"""
    if not JOBS_DIR.exists():
        return []
    return sorted(p.parent.name for p in JOBS_DIR.glob("*/config.toml"))


def get_config_value(key: str, job: Optional[str] = None, default: Any = None) -> Any:
    """
    Get a configuration value with fallback priority:
    1. Environment variable QHOLO_<KEY>
    2. Job-specific config.toml
    3. Base config.toml
    4. Default value
    """
    load_dotenv()
    env_value = os.getenv(ENV_PREFIX + key.upper())
    if env_value is not None:
        return env_value

    if job:
        try:
            job_config = load_job_config(job)
            if key in job_config:
                return job_config[key]
        except FileNotFoundError:
            pass

    try:
        base_config = load_base_config()
        if key in base_config:
            return base_config[key]
    except FileNotFoundError:
        pass

    if default is not None:
        return default
    raise ValueError(f"Configuration key '{key}' not found and no default provided")


def get_config_int(key: str, job: Optional[str] = None, default: int = 0) -> int:
    """Get an integer configuration value with type conversion"""
    value = get_config_value(key, job, default)
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            return default
    return int(value) if value is not None else default


def get_config_list(
    key: str, job: Optional[str] = None, default: list = None, separator: str = ","
) -> list:
    """Get a list configuration value, handling both TOML arrays and comma-separated strings"""
    if default is None:
        default = []

    try:
        value = get_config_value(key, job, default)
    except ValueError:
        return default

    if isinstance(value, list):
        return value
    elif isinstance(value, str):
        return [item.strip() for item in value.split(separator) if item.strip()]
    else:
        return default
