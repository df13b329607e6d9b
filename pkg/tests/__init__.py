"""Mirrorforge Tests"""
