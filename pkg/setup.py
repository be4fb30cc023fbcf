from setuptools import setup, find_packages

if __name__ == '__main__':
    setup(
        name="galconj",
        version="1.0.0",
        packages=find_packages(exclude=['tests', 'tests.*']),
        package_data={'src': ['resources/data/*.json']},
        install_requires=[
            'numpy>=1.24.0',
            'pandas>=1.5.3',
            'python-dotenv>=0.21.1',
            'psutil>=5.9.0',
            'sympy>=1.12',
            'galois>=0.3.8',
            'scipy>=1.10.0',
            'tqdm>=4.65.0',
            'setuptools>=69.0.0',
        ],
        python_requires='>=3.8',
        entry_points={
            'console_scripts': [
                'galconj=src.main:main',
            ],
        },
        description="Exact character tables and Galois-conjugacy classification of finite groups",
        keywords="character table, Galois conjugacy, finite groups, Dixon-Schneider",
    )
