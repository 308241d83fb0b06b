"""Integration in finite terms over differential field towers."""
