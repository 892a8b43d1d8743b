from setuptools import setup, find_packages


def readme():
    with open('README.md', 'r', encoding='utf-8') as f:
        return f.read()


setup(
  name='fair_smith',
  version='0.1.0',
  author='danny_two',
  author_email='primden4@gmail.com',
  description='Fair division of indivisible goods with interdependent values: mechanisms, shares and equilibria.',
  long_description=readme(),
  long_description_content_type='text/markdown',
  packages=find_packages(exclude=['examples', 'examples.*']),
  install_requires=['sympy~=1.13'],
  extras_require={'test': ['hypothesis~=6.122']},
  entry_points={'console_scripts': ['fairsmith = FairSmith.cli:main']},
  classifiers=[
    'Programming Language :: Python :: 3.11',
    'License :: OSI Approved :: MIT License',
    'Operating System :: OS Independent'
  ],
  keywords='fair-division mechanism-design maximin-share aps nash-equilibrium',
  python_requires='>=3.9'
)
