"""
Configuration Management System

Spec loading, schema checks and YAML layering for HARM experiments.
"""

from .configuration_manager import ConfigurationManager, ConfigurationValidator

__all__ = ["ConfigurationManager", "ConfigurationValidator"]
