// Copyright 2026 The iacloop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "iacloop/synthetic_backend.hpp"

namespace iacloop::llm {

namespace {

constexpr std::string_view kPrivateSubnetsWithEndpoint = R"json({
  "AWSTemplateFormatVersion": "2010-09-09",
  "Description": "VPC with two private subnets and a CloudFormation interface endpoint",
  "Parameters": {
    "VpcCidr": {"Type": "String", "Default": "10.0.0.0/16"}
  },
  "Resources": {
    "VPC": {
      "Type": "AWS::EC2::VPC",
      "Properties": {
        "CidrBlock": {"Ref": "VpcCidr"},
        "EnableDnsSupport": true,
        "EnableDnsHostnames": true,
        "InstanceTenancy": "default",
        "Tags": [{"Key": "Name", "Value": "private-vpc"}]
      }
    },
    "PrivateSubnetA": {
      "Type": "AWS::EC2::Subnet",
      "Properties": {
        "VpcId": {"Ref": "VPC"},
        "CidrBlock": "10.0.1.0/24",
        "AvailabilityZone": {"Fn::Select": ["0", {"Fn::GetAZs": ""}]},
        "MapPublicIpOnLaunch": false
      }
    },
    "PrivateSubnetB": {
      "Type": "AWS::EC2::Subnet",
      "Properties": {
        "VpcId": {"Ref": "VPC"},
        "CidrBlock": "10.0.2.0/24",
        "AvailabilityZone": {"Fn::Select": ["1", {"Fn::GetAZs": ""}]},
        "MapPublicIpOnLaunch": false
      }
    },
    "EndpointSecurityGroup": {
      "Type": "AWS::EC2::SecurityGroup",
      "Properties": {
        "GroupDescription": "Allow HTTPS from inside the VPC",
        "GroupName": "cfn-endpoint-sg",
        "VpcId": {"Ref": "VPC"},
        "SecurityGroupIngress": [
          {"IpProtocol": "tcp", "FromPort": 443, "ToPort": 443, "CidrIp": "10.0.0.0/16"}
        ]
      }
    },
    "CloudFormationEndpoint": {
      "Type": "AWS::EC2::VPCEndpoint",
      "Properties": {
        "ServiceName": {"Fn::Sub": "com.amazonaws.${AWS::Region}.cloudformation"},
        "VpcId": {"Ref": "VPC"},
        "VpcEndpointType": "Interface",
        "PrivateDnsEnabled": true,
        "SubnetIds": [{"Ref": "PrivateSubnetA"}, {"Ref": "PrivateSubnetB"}],
        "SecurityGroupIds": [{"Ref": "EndpointSecurityGroup"}]
      }
    }
  },
  "Outputs": {
    "VpcId": {"Value": {"Ref": "VPC"}}
  }
})json";

constexpr std::string_view kWebServerInstance = R"json({
  "AWSTemplateFormatVersion": "2010-09-09",
  "Description": "Single EC2 web server with a security group",
  "Parameters": {
    "KeyName": {"Type": "AWS::EC2::KeyPair::KeyName"},
    "SSHLocation": {"Type": "String", "Default": "0.0.0.0/0"}
  },
  "Resources": {
    "WebServerSecurityGroup": {
      "Type": "AWS::EC2::SecurityGroup",
      "Properties": {
        "GroupDescription": "Enable HTTP and SSH access",
        "GroupName": "web-server-sg",
        "SecurityGroupIngress": [
          {"IpProtocol": "tcp", "FromPort": 80, "ToPort": 80, "CidrIp": "0.0.0.0/0"},
          {"IpProtocol": "tcp", "FromPort": 22, "ToPort": 22, "CidrIp": {"Ref": "SSHLocation"}}
        ]
      }
    },
    "WebServer": {
      "Type": "AWS::EC2::Instance",
      "Properties": {
        "ImageId": "ami-0abcdef1234567890",
        "InstanceType": "t2.micro",
        "KeyName": {"Ref": "KeyName"},
        "SecurityGroups": [{"Ref": "WebServerSecurityGroup"}],
        "Monitoring": true,
        "DisableApiTermination": false,
        "EbsOptimized": false,
        "Tenancy": "default",
        "Ipv6AddressCount": 0,
        "UserData": "IyEvYmluL2Jhc2gKeXVtIGluc3RhbGwgLXkgaHR0cGQK",
        "Tags": [{"Key": "Name", "Value": "web-server"}]
      }
    }
  },
  "Outputs": {
    "InstanceId": {"Value": {"Ref": "WebServer"}}
  }
})json";

constexpr std::string_view kLoggingBuckets = R"json({
  "AWSTemplateFormatVersion": "2010-09-09",
  "Description": "S3 bucket with versioning and a separate access-log bucket",
  "Resources": {
    "LogBucket": {
      "Type": "AWS::S3::Bucket",
      "Properties": {
        "BucketName": "example-access-logs",
        "AccessControl": "LogDeliveryWrite",
        "ObjectLockEnabled": false,
        "PublicAccessBlockConfiguration": {
          "BlockPublicAcls": true,
          "BlockPublicPolicy": true,
          "IgnorePublicAcls": true,
          "RestrictPublicBuckets": true
        }
      }
    },
    "DataBucket": {
      "Type": "AWS::S3::Bucket",
      "Properties": {
        "BucketName": "example-data",
        "AccessControl": "Private",
        "ObjectLockEnabled": false,
        "VersioningConfiguration": {"Status": "Enabled"},
        "BucketEncryption": {
          "ServerSideEncryptionConfiguration": [
            {"ServerSideEncryptionByDefault": {"SSEAlgorithm": "AES256"}}
          ]
        },
        "Tags": [{"Key": "Purpose", "Value": "data"}]
      }
    }
  },
  "Outputs": {
    "DataBucketName": {"Value": {"Ref": "DataBucket"}}
  }
})json";

constexpr std::string_view kPublicSubnetInstance = R"json({
  "AWSTemplateFormatVersion": "2010-09-09",
  "Description": "VPC with a public subnet, internet gateway and one instance",
  "Resources": {
    "VPC": {
      "Type": "AWS::EC2::VPC",
      "Properties": {
        "CidrBlock": "172.16.0.0/16",
        "EnableDnsSupport": true,
        "EnableDnsHostnames": false,
        "InstanceTenancy": "default"
      }
    },
    "InternetGateway": {
      "Type": "AWS::EC2::InternetGateway",
      "Properties": {
        "Tags": [{"Key": "Name", "Value": "public-igw"}]
      }
    },
    "PublicSubnet": {
      "Type": "AWS::EC2::Subnet",
      "Properties": {
        "VpcId": {"Ref": "VPC"},
        "CidrBlock": "172.16.1.0/24",
        "AvailabilityZone": "us-east-1a",
        "MapPublicIpOnLaunch": true,
        "AssignIpv6AddressOnCreation": false
      }
    },
    "PublicRouteTable": {
      "Type": "AWS::EC2::RouteTable",
      "Properties": {
        "VpcId": {"Ref": "VPC"},
        "Tags": [{"Key": "Name", "Value": "public-routes"}]
      }
    },
    "BastionHost": {
      "Type": "AWS::EC2::Instance",
      "Properties": {
        "ImageId": "ami-0123456789abcdef0",
        "InstanceType": "t3.nano",
        "SubnetId": {"Ref": "PublicSubnet"},
        "AvailabilityZone": "us-east-1a",
        "Monitoring": false,
        "Tenancy": "default"
      }
    }
  }
})json";

constexpr std::string_view kGatewayEndpointVpc = R"json({
  "AWSTemplateFormatVersion": "2010-09-09",
  "Description": "VPC with an S3 gateway endpoint attached to a private route table",
  "Parameters": {
    "Environment": {"Type": "String", "Default": "dev"}
  },
  "Resources": {
    "AppVpc": {
      "Type": "AWS::EC2::VPC",
      "Properties": {
        "CidrBlock": "10.20.0.0/16",
        "EnableDnsSupport": true,
        "EnableDnsHostnames": true,
        "InstanceTenancy": "default",
        "Tags": [{"Key": "Environment", "Value": {"Ref": "Environment"}}]
      }
    },
    "AppSubnet": {
      "Type": "AWS::EC2::Subnet",
      "Properties": {
        "VpcId": {"Ref": "AppVpc"},
        "CidrBlock": "10.20.1.0/24",
        "AvailabilityZone": "eu-west-1b",
        "MapPublicIpOnLaunch": false
      }
    },
    "PrivateRouteTable": {
      "Type": "AWS::EC2::RouteTable",
      "Properties": {
        "VpcId": {"Ref": "AppVpc"}
      }
    },
    "S3GatewayEndpoint": {
      "Type": "AWS::EC2::VPCEndpoint",
      "Properties": {
        "ServiceName": "com.amazonaws.eu-west-1.s3",
        "VpcId": {"Ref": "AppVpc"},
        "VpcEndpointType": "Gateway",
        "RouteTableIds": [{"Ref": "PrivateRouteTable"}],
        "PolicyDocument": {
          "Statement": [{"Effect": "Allow", "Principal": "*", "Action": "s3:GetObject", "Resource": "*"}]
        }
      }
    },
    "ArtifactBucket": {
      "Type": "AWS::S3::Bucket",
      "Properties": {
        "BucketName": "app-artifacts",
        "AccessControl": "BucketOwnerFullControl",
        "VersioningConfiguration": {"Status": "Suspended"}
      }
    }
  }
})json";

}  // namespace

const std::vector<std::string_view>& base_templates() {
  static const std::vector<std::string_view> kTemplates = {
      kPrivateSubnetsWithEndpoint, kWebServerInstance, kLoggingBuckets,
      kPublicSubnetInstance,       kGatewayEndpointVpc,
  };
  return kTemplates;
}

}  // namespace iacloop::llm
