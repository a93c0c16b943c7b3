#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from setuptools import setup

setup(  name='gridaco',
        version='0.1.0',
        description='Ant colony path planning on grid maps (AS, Elite AS, MMAS and PFACO), exact A*/Dijkstra oracles and a seeded benchmark harness',
        license='GNU GENERAL PUBLIC LICENSE Version 3',
        packages=['gridworld','searchoracle','colonycore','pfaco','benchharness','plannerio'],
        package_data={'colonycore': ['default.plannersettings.py']},
        install_requires=['numpy','scipy','tqdm','pandas','joblib'],
        extras_require={'test': ['pytest']},
        entry_points={'console_scripts': ['planner = plannerio.planner:main']},
        zip_safe=False
        )
