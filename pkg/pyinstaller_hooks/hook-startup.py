'''
Customized hook for the startup module for pyinstaller.

The environment manager looks for the config, the schemas and the bundled
scenarios next to the executable, so the three folders are added as data.
The Azure monitor distro discovers its OpenTelemetry components through
entry points, which needs the package metadata in the bundle.
'''
import os
from PyInstaller.utils.hooks import collect_submodules, copy_metadata

root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# add the resources read at runtime
datas = [(os.path.join(root, folder), folder) for folder in ('config', 'schema', 'scenarios')]

for distribution in ('azure-monitor-opentelemetry', 'opentelemetry-api', 'opentelemetry-sdk'):
    datas += copy_metadata(distribution)

hiddenimports = collect_submodules('azure.monitor.opentelemetry')
